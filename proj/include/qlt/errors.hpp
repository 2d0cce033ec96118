#ifndef QLT_ERRORS_HPP
#define QLT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlt {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the operation.
struct domain_error : error {
    using error::error;
};

// Input that has no exact-rational representation (e.g. q^a for fractional a).
struct exact_input_error : error {
    using error::error;
};

// A truncated series/product failed to reach tolerance within max_terms.
struct convergence_error : error {
    using error::error;
};

// A lattice tail grew instead of decaying; message names the offending tail.
struct divergence_error : error {
    using error::error;
};

// A product factor vanished where a reciprocal is required.
struct pole_error : error {
    using error::error;
};

// Lattice-limit probe at x = 0 did not settle.
struct limit_error : error {
    using error::error;
};

// No closed form is known for the requested (integrand, kind) pairing.
struct catalog_miss : error {
    using error::error;
};

// Inverse lookup failed; message lists the unmatched residual atoms.
struct no_match_error : error {
    using error::error;
};

// A required boundary trace was not supplied.
struct incomplete_data_error : error {
    using error::error;
};

// Repeated denominator factors are not supported by partial fractions.
struct multiplicity_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

} // namespace qlt

#endif
