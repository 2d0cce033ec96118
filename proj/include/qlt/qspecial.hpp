#ifndef QLT_QSPECIAL_HPP
#define QLT_QSPECIAL_HPP

#include <vector>

#include "qlt/context.hpp"
#include "qlt/errors.hpp"
#include "qlt/qcalc.hpp"

namespace qlt {

// The eight q-trigonometric/hyperbolic series; "small" variants belong to the
// e_q family, "big" variants to the E_q family.
enum class TrigKind {
    cos_small,
    sin_small,
    cos_big,
    sin_big,
    cosh_small,
    sinh_small,
    cosh_big,
    sinh_big
};

const char* to_string(TrigKind t);
bool trig_is_big(TrigKind t);

// Basic hypergeometric series r_phi_s evaluated by partial sums.
double q_hypergeom(const std::vector<double>& upper, const std::vector<double>& lower, double z,
                   const FloatContext& ctx);

// e_q(z) via the reciprocal infinite product 1 / ((1-q)z; q)_inf.
double q_exp_small(double z, const FloatContext& ctx);

// E_q(z) via the entire product (-(1-q)z; q)_inf.
double q_exp_big(double z, const FloatContext& ctx);

double q_trig(double z, TrigKind which, const FloatContext& ctx);

// First-kind q-Gamma: exact q-factorial at integers, classical product formula
// otherwise.
double q_gamma_first(double t, const FloatContext& ctx);

// Second-kind q-Gamma: exact shifted-factorial relation at integers; the
// defining lattice sum on the A = 1 lattice otherwise (the non-integer value
// is a convention of that lattice).
double q_gamma_second(double t, const FloatContext& ctx);

// Lattice plan used for e_q-kernel integrals: the integrand legitimately rises
// for several steps along the large-x tail before the exponential decay wins,
// so the divergence guard is longer than the generic default.
LatticeSumPlan second_kind_plan();

} // namespace qlt

#endif
