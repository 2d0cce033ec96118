#ifndef QLT_QCALC_HPP
#define QLT_QCALC_HPP

#include <functional>
#include <utility>

#include "qlt/context.hpp"
#include "qlt/errors.hpp"

namespace qlt {

using LatticeFunction1D = std::function<double(double)>;
using LatticeFunction2D = std::function<double(double, double)>;

// Improper lattice sums run over the points x_k = q^k / A, k_min <= k <= k_max.
// Both tails stop early once `consecutive_small` successive terms fall below
// tol relative to the partial sum; a tail whose terms grow for
// `divergence_guard` successive steps aborts with a divergence diagnostic.
struct LatticeSumPlan {
    double A = 1.0;
    long k_min = -64;
    long k_max = 600;
    double tol = 1e-14;
    int consecutive_small = 3;
    int divergence_guard = 5;

    void validate() const {
        if (!(A > 0)) throw domain_error("LatticeSumPlan: scale A must be positive");
        if (k_min > 0 || k_max < 0) throw domain_error("LatticeSumPlan: window must contain k = 0");
        if (!(tol > 0)) throw domain_error("LatticeSumPlan: tol must be positive");
        if (consecutive_small <= 0 || divergence_guard <= 0)
            throw domain_error("LatticeSumPlan: counters must be positive");
    }
};

// D_q^order f at x.  x = 0 is resolved by probing the quotient along x = q^j.
double q_derivative(const LatticeFunction1D& f, double x, int order, const FloatContext& ctx);

enum class Var { x, y };

// Single-variable partial q-derivative of a two-variable function.
double q_partial(const LatticeFunction2D& f, Var var, std::pair<double, double> point, int order,
                 const FloatContext& ctx);

// Mixed partials, x-derivatives applied first.
double q_partial_mixed(const LatticeFunction2D& f, std::pair<double, double> point, int order_x, int order_y,
                       const FloatContext& ctx);

// int_a^b f d_q x as the difference of two unilateral Jackson sums.
double jackson_integral_finite(const LatticeFunction1D& f, double a, double b, const FloatContext& ctx,
                               double tol = 0.0);

// (1-q) sum_k x_k f(x_k) over the plan's bilateral lattice.
double jackson_integral_improper(const LatticeFunction1D& f, const LatticeSumPlan& plan, const FloatContext& ctx);

// Same sum with the integrand seen as a function of the lattice index, so
// kernels can be evaluated with exact integer powers of q.
double improper_lattice_sum(const std::function<double(long, double)>& term, const LatticeSumPlan& plan,
                            const FloatContext& ctx);

// Iterated tensor-product improper integral.
double jackson_integral_improper_2d(const LatticeFunction2D& f, const LatticeSumPlan& plan_x,
                                    const LatticeSumPlan& plan_y, const FloatContext& ctx);

} // namespace qlt

#endif
