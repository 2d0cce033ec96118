#include "qlt/qcalc.hpp"

#include <cmath>
#include <sstream>

namespace qlt {

namespace {

double q_derivative_once(const LatticeFunction1D& f, double x, const FloatContext& ctx) {
    return (f(x) - f(ctx.q * x)) / ((1.0 - ctx.q) * x);
}

double q_derivative_rec(const LatticeFunction1D& f, double x, int order, const FloatContext& ctx) {
    if (order == 1) return q_derivative_once(f, x, ctx);
    auto lower = [&](double u) { return q_derivative_rec(f, u, order - 1, ctx); };
    return q_derivative_once(lower, x, ctx);
}

} // namespace

double q_derivative(const LatticeFunction1D& f, double x, int order, const FloatContext& ctx) {
    if (order < 1) throw domain_error("q_derivative: order must be >= 1");
    if (x != 0.0) return q_derivative_rec(f, x, order, ctx);

    // lattice-limit probe along x = q^j: accept once successive quotients settle
    double prev = 0.0;
    bool have_prev = false;
    double xj = 1.0;
    for (long j = 0; j < 400; ++j) {
        xj *= ctx.q;
        double v = q_derivative_rec(f, xj, order, ctx);
        if (have_prev && std::isfinite(v)) {
            double scale = std::max(1.0, std::fabs(v));
            if (std::fabs(v - prev) <= ctx.tol * scale) return v;
        }
        prev = v;
        have_prev = true;
        if (xj < 1e-280) break;
    }
    throw limit_error("q_derivative: quotient did not settle while probing x -> 0");
}

double q_partial(const LatticeFunction2D& f, Var var, std::pair<double, double> point, int order,
                 const FloatContext& ctx) {
    if (order == 0) return f(point.first, point.second);
    if (var == Var::x) {
        auto g = [&](double u) { return f(u, point.second); };
        return q_derivative(g, point.first, order, ctx);
    }
    auto g = [&](double u) { return f(point.first, u); };
    return q_derivative(g, point.second, order, ctx);
}

double q_partial_mixed(const LatticeFunction2D& f, std::pair<double, double> point, int order_x, int order_y,
                       const FloatContext& ctx) {
    if (order_x < 0 || order_y < 0) throw domain_error("q_partial_mixed: negative order");
    if (order_x == 0 && order_y == 0) return f(point.first, point.second);
    if (order_y == 0) return q_partial(f, Var::x, point, order_x, ctx);
    auto inner = [&](double x, double y) -> double {
        if (order_x == 0) return f(x, y);
        auto g = [&](double u) { return f(u, y); };
        return q_derivative(g, x, order_x, ctx);
    };
    auto h = [&](double v) { return inner(point.first, v); };
    return q_derivative(h, point.second, order_y, ctx);
}

double jackson_integral_finite(const LatticeFunction1D& f, double a, double b, const FloatContext& ctx,
                               double tol) {
    if (a < 0 || b < 0) throw domain_error("jackson_integral_finite: bounds must be nonnegative");
    if (tol <= 0) tol = ctx.tol;
    auto one_sided = [&](double z) -> double {
        if (z == 0.0) return 0.0;
        double sum = 0.0;
        double w = 1.0; // q^k
        int small_run = 0;
        for (long k = 0; k < ctx.max_terms; ++k) {
            double term = w * f(z * w);
            sum += term;
            if (std::fabs(term) <= tol * std::fabs(sum)) {
                if (++small_run >= 3) return z * (1.0 - ctx.q) * sum;
            } else {
                small_run = 0;
            }
            w *= ctx.q;
        }
        throw convergence_error("jackson_integral_finite: series did not settle within max_terms");
    };
    if (a == b) return 0.0;
    return one_sided(b) - one_sided(a);
}

double improper_lattice_sum(const std::function<double(long, double)>& term_fn, const LatticeSumPlan& plan,
                            const FloatContext& ctx) {
    plan.validate();
    const double one_minus_q = 1.0 - ctx.q;

    auto run_tail = [&](long k_begin, long k_end, long step, const char* tail_name, double& out) -> bool {
        // returns true when the tail stopped by smallness, false when the
        // window was exhausted with terms still significant
        double sum = 0.0;
        int small_run = 0;
        int growth_run = 0;
        double prev_mag = -1.0;
        for (long k = k_begin; step > 0 ? k <= k_end : k >= k_end; k += step) {
            double x = std::pow(ctx.q, static_cast<double>(k)) / plan.A;
            double term = one_minus_q * x * term_fn(k, x);
            sum += term;
            double mag = std::fabs(term);
            if (!std::isfinite(term)) {
                std::ostringstream os;
                os << "improper lattice sum diverges: non-finite term on the " << tail_name << " at k=" << k;
                throw divergence_error(os.str());
            }
            if (mag <= plan.tol * std::fabs(sum)) {
                if (++small_run >= plan.consecutive_small) {
                    out = sum;
                    return true;
                }
            } else {
                small_run = 0;
            }
            if (prev_mag >= 0.0 && mag > prev_mag && mag > plan.tol) {
                if (++growth_run >= plan.divergence_guard) {
                    std::ostringstream os;
                    os << "improper lattice sum diverges: terms grow on the " << tail_name << " (|term|=" << mag
                       << " at k=" << k << ")";
                    throw divergence_error(os.str());
                }
            } else {
                growth_run = 0;
            }
            prev_mag = mag;
        }
        out = sum;
        return false;
    };

    double up = 0.0; // k = 0 .. k_max, x decreasing toward 0
    bool up_settled = run_tail(0, plan.k_max, +1, "small-x tail (k -> +inf)", up);
    if (!up_settled) throw convergence_error("improper lattice sum: small-x tail (k -> +inf) not converged in window");

    double down = 0.0; // k = -1 .. k_min, x increasing toward infinity
    if (plan.k_min <= -1) {
        bool down_settled = run_tail(-1, plan.k_min, -1, "large-x tail (k -> -inf)", down);
        if (!down_settled)
            throw convergence_error("improper lattice sum: large-x tail (k -> -inf) not converged in window");
    }
    return up + down;
}

double jackson_integral_improper(const LatticeFunction1D& f, const LatticeSumPlan& plan, const FloatContext& ctx) {
    return improper_lattice_sum([&](long, double x) { return f(x); }, plan, ctx);
}

double jackson_integral_improper_2d(const LatticeFunction2D& f, const LatticeSumPlan& plan_x,
                                    const LatticeSumPlan& plan_y, const FloatContext& ctx) {
    auto outer = [&](long, double x) {
        return improper_lattice_sum([&](long, double y) { return f(x, y); }, plan_y, ctx);
    };
    return improper_lattice_sum(outer, plan_x, ctx);
}

} // namespace qlt
