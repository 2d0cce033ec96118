#include "qlt/qtransform2.hpp"

#include <cmath>

namespace qlt {

namespace {

LatticeSumPlan axis_plan(Kind1D kind, double freq, const FloatContext& ctx,
                         const std::optional<LatticeSumPlan>& plan_override) {
    if (plan_override) return *plan_override;
    return kind == Kind1D::first ? first_kind_adapted_plan(freq, ctx) : second_kind_plan();
}

} // namespace

double qlap2d_numeric(const Descriptor<double>& f, double r, double s, TransformKind kind, const FloatContext& ctx,
                      const std::optional<LatticeSumPlan>& plan_x, const std::optional<LatticeSumPlan>& plan_y) {
    if (!(r > 0) || !(s > 0)) throw domain_error("qlap2d_numeric: r and s must be positive");
    const Kind1D kx = axis_kind_x(kind), ky = axis_kind_y(kind);
    auto terms = separable_terms(f, ctx);
    if (terms.empty()) return 0.0;

    std::vector<Atom1D<double>> fxs, fys;
    for (auto& t : terms) {
        check_axis_region(t.fx, kx, r, ctx, "x");
        check_axis_region(t.fy, ky, s, ctx, "y");
        fxs.push_back(t.fx);
        fys.push_back(t.fy);
    }
    std::vector<double> sums_x = axis_fused_sums(kx, r, ctx, fxs, plan_x, "x");
    std::vector<double> sums_y = axis_fused_sums(ky, s, ctx, fys, plan_y, "y");

    double total = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) total += terms[i].coef * sums_x[i] * sums_y[i];
    return total;
}

double qlap2d_numeric_raw(const LatticeFunction2D& f, double r, double s, TransformKind kind,
                          const FloatContext& ctx, const std::optional<LatticeSumPlan>& plan_x,
                          const std::optional<LatticeSumPlan>& plan_y) {
    if (!(r > 0) || !(s > 0)) throw domain_error("qlap2d_numeric_raw: r and s must be positive");
    const Kind1D kx = axis_kind_x(kind), ky = axis_kind_y(kind);
    LatticeSumPlan px = axis_plan(kx, r, ctx, plan_x);
    LatticeSumPlan py = axis_plan(ky, s, ctx, plan_y);
    const bool adapted_x = (kx == Kind1D::first) && !plan_x;
    const bool adapted_y = (ky == Kind1D::first) && !plan_y;
    FloatContext kctx(ctx.q, 1e-17, ctx.max_terms);

    auto kernel_x = [&](long k, double x) {
        if (kx == Kind1D::first)
            return adapted_x ? first_kind_kernel_term(k, kctx) : q_exp_big(-ctx.q * r * x, kctx);
        return q_exp_small(-r * x, kctx);
    };
    auto kernel_y = [&](long l, double y) {
        if (ky == Kind1D::first)
            return adapted_y ? first_kind_kernel_term(l, kctx) : q_exp_big(-ctx.q * s * y, kctx);
        return q_exp_small(-s * y, kctx);
    };

    auto outer = [&](long k, double x) -> double {
        double kx_val = kernel_x(k, x);
        if (kx_val == 0.0) return 0.0;
        auto inner = [&](long l, double y) {
            double ky_val = kernel_y(l, y);
            return ky_val == 0.0 ? 0.0 : f(x, y) * ky_val;
        };
        return kx_val * improper_lattice_sum(inner, py, ctx);
    };
    return improper_lattice_sum(outer, px, ctx);
}

std::function<double(double, double)> multiplication_image(TransformKind kind, long m, long n,
                                                           std::function<double(double, double)> F,
                                                           const FloatContext& ctx) {
    if (m < 0 || n < 0) throw domain_error("multiplication_image: orders must be nonnegative");
    if (kind == TransformKind::k1) {
        double qm = std::pow(ctx.q, static_cast<double>(-m));
        double qn = std::pow(ctx.q, static_cast<double>(-n));
        double pref = std::pow(ctx.q, static_cast<double>(binom2(m) + binom2(n)));
        if ((m + n) % 2) pref = -pref;
        return [=](double r, double s) {
            auto shifted = [&](double u, double v) { return F(qm * u, qn * v); };
            double d = q_partial_mixed(shifted, {r, s}, static_cast<int>(m), static_cast<int>(n), ctx);
            return pref * d;
        };
    }
    if (kind == TransformKind::k2) {
        double pref = ((m + n) % 2) ? -1.0 : 1.0;
        return [=](double r, double s) {
            auto plain = [&](double u, double v) { return F(u, v); };
            double d = q_partial_mixed(plain, {r, s}, static_cast<int>(m), static_cast<int>(n), ctx);
            return pref * d;
        };
    }
    throw domain_error("multiplication_image: multiplication theorems exist for kinds 1 and 2 only");
}

} // namespace qlt
