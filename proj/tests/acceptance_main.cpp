// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <cstdio>
#include <string>
#include <vector>

#include "qlt/report.hpp"

using namespace qlt;

namespace {

struct Criterion {
    std::string name;
    std::vector<VerifyRow> rows;
};

bool report(const Criterion& c) {
    int failed = 0, counted = 0;
    double worst = 0.0;
    std::string worst_id;
    for (auto& r : c.rows) {
        if (r.status == "info") continue;
        ++counted;
        if (r.status == "fail") {
            ++failed;
            if (r.max_error >= worst) {
                worst = r.max_error;
                worst_id = r.id + " (q=" + r.q + ", kind " + r.kind + ")";
            }
        }
    }
    if (failed == 0) {
        std::printf("[PASS] %s  (%d checks)\n", c.name.c_str(), counted);
        return true;
    }
    std::printf("[FAIL] %s  (%d of %d checks failed; worst: %s, error %.3e)\n", c.name.c_str(), failed, counted,
                worst_id.c_str(), worst);
    for (auto& r : c.rows)
        if (r.status == "fail")
            std::printf("       - %s kind=%s q=%s %s: max_error %.3e tol %.1e\n", r.id.c_str(), r.kind.c_str(),
                        r.q.c_str(), r.params.c_str(), r.max_error, r.tol);
    return false;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;

    {
        Criterion c{"criterion 1: exact identity suite (q = 1/2 and 2/3)", {}};
        for (Rational q : {Rational(1, 2), Rational(2, 3)}) {
            auto rows = suite_identities(ExactContext(q));
            c.rows.insert(c.rows.end(), rows.begin(), rows.end());
        }
        criteria.push_back(std::move(c));
    }

    {
        Criterion c2{"criterion 2: first-kind double-transform table (q in {0.3, 0.5, 0.7})", {}};
        Criterion c3{"criterion 3: second/third/fourth-kind tables (q in {0.3, 0.5, 0.7})", {}};
        for (double q : {0.3, 0.5, 0.7}) {
            auto rows = suite_transform_tables(FloatContext(q));
            for (auto& r : rows)
                (r.kind == "1" ? c2 : c3).rows.push_back(r);
        }
        criteria.push_back(std::move(c2));
        criteria.push_back(std::move(c3));
    }

    {
        Criterion c{"criterion 4: operator-theorem closure (derivative and multiplication images)", {}};
        c.rows = suite_operator_theorems(FloatContext(0.5));
        criteria.push_back(std::move(c));
    }

    {
        Criterion c{"criterion 5: q-Gamma functions (integers, recurrences, integral comparison)", {}};
        c.rows = suite_gamma(FloatContext(0.5));
        criteria.push_back(std::move(c));
    }

    {
        Criterion c{"criterion 6: functional equations, transport, telegraph, wave", {}};
        c.rows = suite_apps(ExactContext(Rational(1, 2)));
        criteria.push_back(std::move(c));
    }

    {
        Criterion c{"criterion 7: divergence honesty on the naive bilateral lattice", {}};
        c.rows = suite_divergence(FloatContext(0.5));
        criteria.push_back(std::move(c));
    }

    int failures = 0;
    for (auto& c : criteria)
        if (!report(c)) ++failures;
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
