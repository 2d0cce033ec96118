#ifndef QLT_REPORT_HPP
#define QLT_REPORT_HPP

#include <string>
#include <vector>

#include "qlt/context.hpp"

namespace qlt {

// One verification result: an identity or a two-path agreement, with the
// tolerance it was held to. status is "pass", "fail" or "info".
struct VerifyRow {
    std::string suite;
    std::string id;
    std::string kind;
    std::string q;
    std::string params;
    double max_error = 0.0;
    double tol = 0.0;
    bool exact = false;
    std::string status;
};

bool all_pass(const std::vector<VerifyRow>& rows);
std::string rows_to_json(const std::vector<VerifyRow>& rows);
std::string rows_to_csv(const std::vector<VerifyRow>& rows);

// Exact-arithmetic identity suite (expansions, homomorphisms, telescoping).
std::vector<VerifyRow> suite_identities(const ExactContext& ctx);

// q-Gamma function checks: integer values, recurrences, product formula vs
// the defining lattice integral.
std::vector<VerifyRow> suite_gamma(const FloatContext& ctx);

// Catalog-vs-numeric tables for all four transform kinds at one q.
std::vector<VerifyRow> suite_transform_tables(const FloatContext& ctx);

// Derivative- and multiplication-theorem two-path closures.
std::vector<VerifyRow> suite_operator_theorems(const FloatContext& ctx);

// Functional equations and the transport/telegraph/wave reproductions.
std::vector<VerifyRow> suite_apps(const ExactContext& ctx);

// The naive-lattice divergence demonstration.
std::vector<VerifyRow> suite_divergence(const FloatContext& ctx);

} // namespace qlt

#endif
