#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qlt/qcore.hpp"
#include "qlt/qspecial.hpp"

using namespace qlt;

namespace {

// independent series oracles
double eq_series(double z, double q, int terms = 300) {
    double sum = 0.0, term = 1.0;
    FloatContext ctx(q);
    for (int n = 0; n < terms; ++n) {
        sum += term;
        term *= z / q_number<double>(static_cast<long>(n) + 1, ctx);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

double Eq_series(double z, double q, int terms = 300) {
    double sum = 0.0, term = 1.0;
    FloatContext ctx(q);
    for (int n = 0; n < terms; ++n) {
        sum += term;
        term *= std::pow(q, n) * z / q_number<double>(static_cast<long>(n) + 1, ctx); // q^C(n+1,2)/q^C(n,2) = q^n
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

} // namespace

TEST_CASE("q_hypergeom basics") {
    FloatContext ctx(0.5, 1e-16);
    CHECK(q_hypergeom({0.7, 0.2}, {0.4}, 0.0, ctx) == 1.0);
    // 1phi0 with upper 0 reproduces e_q; 0phi0 reproduces E_q
    double z = 0.3;
    CHECK(q_hypergeom({0.0}, {}, (1 - ctx.q) * z, ctx) == doctest::Approx(q_exp_small(z, ctx)).epsilon(1e-13));
    CHECK(q_hypergeom({}, {}, -(1 - ctx.q) * z, ctx) == doctest::Approx(q_exp_big(z, ctx)).epsilon(1e-13));
    // vanishing lower Pochhammer factor: b = q^{-2} hits zero at k = 2
    CHECK_THROWS_AS(q_hypergeom({0.3}, {std::pow(0.5, -2)}, 0.1, ctx), pole_error);
}

TEST_CASE("q_exp product and series forms agree") {
    FloatContext ctx(0.5, 1e-16);
    CHECK(q_exp_small(0.0, ctx) == 1.0);
    CHECK(q_exp_big(0.0, ctx) == 1.0);
    CHECK(q_exp_small(0.3, ctx) == doctest::Approx(eq_series(0.3, 0.5)).epsilon(1e-12));
    CHECK(q_exp_big(0.7, ctx) == doctest::Approx(Eq_series(0.7, 0.5)).epsilon(1e-12));
    CHECK(q_exp_big(-1.3, ctx) == doctest::Approx(Eq_series(-1.3, 0.5)).epsilon(1e-12));

    // E_{1/2}(-2) hits the zero of the first product factor exactly
    CHECK(q_exp_big(-2.0, ctx) == 0.0);

    // product form value at z = 1
    double direct = 1.0;
    for (int j = 0; j < 60; ++j) direct *= (1.0 + 0.5 * std::pow(0.5, j));
    CHECK(q_exp_big(1.0, ctx) == doctest::Approx(direct).epsilon(1e-13));

    // pole of e_q: (1-q) z q^j = 1 at z = 2, q = 1/2
    CHECK_THROWS_AS(q_exp_small(2.0, ctx), pole_error);
}

TEST_CASE("reciprocal identity e_q(z) E_q(-z) = 1") {
    FloatContext half(0.5);
    CHECK(q_exp_small(0.7, half) * q_exp_big(-0.7, half) == doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (double q : {0.3, 0.5, 0.9}) {
        FloatContext ctx(q);
        for (int i = 0; i < 50; ++i) {
            double z = dist(rng);
            // skip points too close to a pole of e_q
            bool near_pole = false;
            for (int j = 0; j < 40; ++j)
                if (std::fabs(1.0 - (1 - q) * z * std::pow(q, j)) < 1e-3) near_pole = true;
            if (near_pole) continue;
            CHECK(q_exp_small(z, ctx) * q_exp_big(-z, ctx) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("q_trig values and identities") {
    FloatContext ctx(0.5);
    CHECK(q_trig(0.0, TrigKind::cos_small, ctx) == 1.0);
    CHECK(q_trig(0.0, TrigKind::sin_small, ctx) == 0.0);

    double z = 0.4;
    double lhs = q_trig(z, TrigKind::cosh_small, ctx);
    double rhs = 0.5 * (q_exp_small(z, ctx) + q_exp_small(-z, ctx));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // even-part oracle for cos
    z = 0.5;
    double sum = 0.0, term = 1.0;
    for (int n = 0; n < 60; ++n) {
        sum += term;
        term *= -z * z / (q_number<double>(2L * n + 1, ctx) * q_number<double>(2L * n + 2, ctx));
    }
    CHECK(q_trig(z, TrigKind::cos_small, ctx) == doctest::Approx(sum).epsilon(1e-13));

    // big-family value via E_q combination
    double big = 0.5 * (q_exp_big(z, ctx) + q_exp_big(-z, ctx));
    CHECK(q_trig(z, TrigKind::cosh_big, ctx) == doctest::Approx(big).epsilon(1e-12));

    // small-family series outside its radius: |z|(1-q) >= 1
    CHECK_THROWS_AS(q_trig(40.0, TrigKind::cosh_small, ctx), convergence_error);
}

TEST_CASE("q_gamma_first") {
    FloatContext ctx(0.5);
    CHECK(q_gamma_first(1.0, ctx) == 1.0);
    CHECK(q_gamma_first(4.0, ctx) == doctest::Approx(21.0 / 8.0).epsilon(1e-15));
    for (long n = 0; n <= 10; ++n) CHECK(q_gamma_first(n + 1.0, ctx) == q_factorial<double>(n, ctx));
    CHECK_THROWS_AS(q_gamma_first(0.0, ctx), domain_error);
    CHECK_THROWS_AS(q_gamma_first(-1.5, ctx), domain_error);

    // recurrence via the product formula
    for (double t : {0.5, 1.5, 2.5}) {
        double lhs = q_gamma_first(t + 1.0, ctx);
        double rhs = q_number<double>(t, ctx) * q_gamma_first(t, ctx);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }

    // product formula against the defining lattice integral (kernel-adapted):
    // the value was confirmed against the brute-force sum before freezing
    auto integral_gamma = [&](double t) {
        LatticeSumPlan plan;
        plan.A = 1.0 - ctx.q;
        plan.tol = 1e-16;
        auto f = [&](double x) { return std::pow(x, t - 1.0) * q_exp_big(-ctx.q * x, ctx); };
        return jackson_integral_improper(f, plan, ctx);
    };
    CHECK(q_gamma_first(0.5, ctx) == doctest::Approx(integral_gamma(0.5)).epsilon(1e-10));
    CHECK(q_gamma_first(1.5, ctx) == doctest::Approx(integral_gamma(1.5)).epsilon(1e-10));

    // regression value, frozen after the product form, the adapted-lattice
    // integral, and an independently coded brute-force sum agreed to 1e-15
    CHECK(q_gamma_first(0.5, ctx) == doctest::Approx(1.572032725786323).epsilon(1e-12));
}

TEST_CASE("q_gamma_second") {
    FloatContext ctx(0.5);
    CHECK(q_gamma_second(1.0, ctx) == 1.0);
    CHECK(q_gamma_second(3.0, ctx) == doctest::Approx(12.0).epsilon(1e-14)); // q^{-3} [2]_q! = 8 * 3/2

    // lattice-sum vs closed form at integers
    for (long n = 1; n <= 8; ++n) {
        auto f = [&](double x) { return std::pow(x, n - 1.0) * q_exp_small(-x, ctx); };
        double lattice = jackson_integral_improper(f, second_kind_plan(), ctx);
        CHECK(lattice == doctest::Approx(q_gamma_second(n, ctx)).epsilon(1e-10));
    }

    // recurrence via two independent lattice sums
    double lhs = q_gamma_second(2.5, ctx) / q_gamma_second(1.5, ctx);
    double rhs = std::pow(ctx.q, -1.5) * q_number<double>(1.5, ctx);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    CHECK_THROWS_AS(q_gamma_second(0.0, ctx), domain_error);

    // frozen regression value of the A = 1 lattice convention
    CHECK(q_gamma_second(1.5, ctx) == doctest::Approx(1.194227708820909).epsilon(1e-12));
}
