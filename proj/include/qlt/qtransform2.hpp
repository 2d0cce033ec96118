#ifndef QLT_QTRANSFORM2_HPP
#define QLT_QTRANSFORM2_HPP

#include <functional>
#include <optional>

#include "qlt/qtransform.hpp"

namespace qlt {

// ---- numeric evaluation ------------------------------------------------------

// Tensor-product Jackson sum of f(x,y) * kernel_x(x) * kernel_y(y).
// Descriptors expand into finite sums of separable products, so each product
// factorizes into two axis sums over the shared lattice samples.
double qlap2d_numeric(const Descriptor<double>& f, double r, double s, TransformKind kind, const FloatContext& ctx,
                      const std::optional<LatticeSumPlan>& plan_x = std::nullopt,
                      const std::optional<LatticeSumPlan>& plan_y = std::nullopt);

// Nested bilateral sum for opaque integrands.
double qlap2d_numeric_raw(const LatticeFunction2D& f, double r, double s, TransformKind kind,
                          const FloatContext& ctx, const std::optional<LatticeSumPlan>& plan_x = std::nullopt,
                          const std::optional<LatticeSumPlan>& plan_y = std::nullopt);

// ---- operator theorems -------------------------------------------------------

struct DerivativeSpec {
    enum class Tag { dx, dy, dxdy, dxx, dyy, dxn, dyn };
    Tag tag = Tag::dx;
    long n = 1; // order for dxn / dyn

    static DerivativeSpec dx() { return {Tag::dx, 1}; }
    static DerivativeSpec dy() { return {Tag::dy, 1}; }
    static DerivativeSpec dxdy() { return {Tag::dxdy, 1}; }
    static DerivativeSpec dxx() { return {Tag::dxx, 2}; }
    static DerivativeSpec dyy() { return {Tag::dyy, 2}; }
    static DerivativeSpec dxn(long n) { return {Tag::dxn, n}; }
    static DerivativeSpec dyn(long n) { return {Tag::dyn, n}; }
};

// Boundary traces feeding the derivative theorems:
//   x0_traces[k] = 1-D transform (in s) of d_q^k f / d_q x^k at x = 0
//   y0_traces[k] = 1-D transform (in r) of d_q^k f / d_q y^k at y = 0
//   corner       = f(0,0)
template <class S>
struct BoundaryData {
    std::vector<SExpr<S>> x0_traces;
    std::vector<SExpr<S>> y0_traces;
    std::optional<S> corner;

    const SExpr<S>& x0(std::size_t k) const {
        if (k >= x0_traces.size()) throw incomplete_data_error("derivative_image: missing x=0 boundary trace");
        return x0_traces[k];
    }
    const SExpr<S>& y0(std::size_t k) const {
        if (k >= y0_traces.size()) throw incomplete_data_error("derivative_image: missing y=0 boundary trace");
        return y0_traces[k];
    }
    S corner_value() const {
        if (!corner) throw incomplete_data_error("derivative_image: missing corner value f(0,0)");
        return *corner;
    }
};

// Evaluator of the transform of x^m y^n f given an evaluator of the transform
// of f. The argument shifts are applied before q-differentiating.
std::function<double(double, double)> multiplication_image(TransformKind kind, long m, long n,
                                                           std::function<double(double, double)> F,
                                                           const FloatContext& ctx);

// ---- closed-form catalog (templated) ------------------------------------------

template <class S>
RSExpr<S> qlap2d_catalog(const Descriptor<S>& f, TransformKind kind, const QContext<S>& ctx);

template <class S>
RSExpr<S> scaling_image(const Descriptor<S>& f, const S& a, const S& b, TransformKind kind, const QContext<S>& ctx);

template <class S>
RSExpr<S> derivative_image(TransformKind kind, const DerivativeSpec& spec, const RSExpr<S>& F,
                           const BoundaryData<S>& bd, const QContext<S>& ctx);

// ---- implementation ------------------------------------------------------------

template <class S>
RSExpr<S> qlap2d_catalog(const Descriptor<S>& f, TransformKind kind, const QContext<S>& ctx) {
    using Tag = typename Descriptor<S>::Tag;
    const S one = scalar_traits<S>::from_long(1);
    const Kind1D kx = axis_kind_x(kind), ky = axis_kind_y(kind);
    switch (f.tag) {
        case Tag::monomial: {
            auto gx = qlap1d_catalog<S>(Atom1D<S>::monomial(f.ax), kx, ctx);
            auto hy = qlap1d_catalog<S>(Atom1D<S>::monomial(f.ay), ky, ctx);
            return tensor(gx, hy);
        }
        case Tag::separable:
            return tensor(qlap1d_catalog<S>(f.gx, kx, ctx), qlap1d_catalog<S>(f.hy, ky, ctx));
        case Tag::qadd_power: {
            RSExpr<S> e;
            S nf = q_factorial<S>(f.n, ctx);
            if (f.add_kind == AdditionKind::ward_add && kind == TransformKind::k1) {
                for (long k = 0; k <= f.n; ++k) {
                    S c = nf * pow_int<S>(f.a, k) * pow_int<S>(f.b, f.n - k);
                    e = e + RSExpr<S>::power_atom(c, Rational(-(k + 1)), Rational(-(f.n - k + 1)));
                }
                return e;
            }
            if (f.add_kind == AdditionKind::coadd && kind == TransformKind::k2) {
                S pref = nf * ctx.qpow(-binom2(f.n + 1));
                for (long k = 0; k <= f.n; ++k) {
                    S c = pref * pow_int<S>(f.a, k) * pow_int<S>(f.b, f.n - k);
                    e = e + RSExpr<S>::power_atom(c, Rational(-(k + 1)), Rational(-(f.n - k + 1)));
                }
                return e;
            }
            if (f.add_kind == AdditionKind::qpow_add && kind == TransformKind::k3) {
                S pref = nf * ctx.qpow(-binom2(f.n + 1));
                for (long k = 0; k <= f.n; ++k) {
                    S c = pref * ctx.qpow(f.n * k) * pow_int<S>(f.a, f.n - k) * pow_int<S>(f.b, k);
                    e = e + RSExpr<S>::power_atom(c, Rational(-(f.n - k + 1)), Rational(-(k + 1)));
                }
                return e;
            }
            if (f.add_kind == AdditionKind::qpow_add && kind == TransformKind::k4) {
                for (long k = 0; k <= f.n; ++k) {
                    S c = nf * ctx.qpow(-(f.n - k)) * pow_int<S>(f.a, k) * pow_int<S>(f.b, f.n - k);
                    e = e + RSExpr<S>::power_atom(c, Rational(-(k + 1)), Rational(-(f.n - k + 1)));
                }
                return e;
            }
            throw catalog_miss("q-addition power pairs only as ward/k1, coadd/k2, qpow/k3, qpow/k4");
        }
        case Tag::exp_qadd: {
            if (f.family == ExpFamily::small && kind == TransformKind::k1) {
                RSAtom<S> a;
                a.coef = one;
                a.r.lin.push_back({one, f.a});
                a.s.lin.push_back({one, f.b});
                RSExpr<S> e;
                e.atoms.push_back(std::move(a));
                e.notes.push_back("region: r > a and s > b");
                return e;
            }
            if (f.family == ExpFamily::big && kind == TransformKind::k2) {
                RSAtom<S> a;
                a.coef = ctx.q * ctx.q;
                a.r.lin.push_back({ctx.q, f.a});
                a.s.lin.push_back({ctx.q, f.b});
                RSExpr<S> e;
                e.atoms.push_back(std::move(a));
                e.notes.push_back("region: qr > a and qs > b");
                return e;
            }
            throw catalog_miss("exponential q-addition pairs only as small/k1 and big/k2");
        }
        case Tag::trig_qadd: {
            bool big = trig_is_big(f.trig);
            if ((!big && kind != TransformKind::k1) || (big && kind != TransformKind::k2))
                throw catalog_miss("trig q-addition pairs only as small-family/k1 and big-family/k2");
            S kappa = big ? ctx.q : one;
            S scale2 = kappa * kappa; // one power of the 1-D image scale per factor
            S aa = f.a * f.a, bb = f.b * f.b;
            bool hyper = (f.trig == TrigKind::cosh_small || f.trig == TrigKind::cosh_big ||
                          f.trig == TrigKind::sinh_small || f.trig == TrigKind::sinh_big);
            bool even = (f.trig == TrigKind::cos_small || f.trig == TrigKind::cos_big ||
                         f.trig == TrigKind::cosh_small || f.trig == TrigKind::cosh_big);
            QuadFactor<S> qr{kappa, hyper ? -aa : aa};
            QuadFactor<S> qs{kappa, hyper ? -bb : bb};
            RSExpr<S> e;
            if (even) {
                // (kappa^2 rs -+ ab) * scale2 over the quadratic pair
                RSAtom<S> a1;
                a1.coef = scale2 * kappa * kappa;
                a1.r.expo = Rational(1);
                a1.s.expo = Rational(1);
                a1.r.quad.push_back(qr);
                a1.s.quad.push_back(qs);
                RSAtom<S> a2;
                a2.coef = scale2 * (hyper ? f.a * f.b : -(f.a * f.b));
                a2.r.quad.push_back(qr);
                a2.s.quad.push_back(qs);
                e.atoms.push_back(std::move(a1));
                e.atoms.push_back(std::move(a2));
            } else {
                // scale2 * kappa * (a s + b r) over the quadratic pair
                RSAtom<S> a1;
                a1.coef = scale2 * kappa * f.a;
                a1.s.expo = Rational(1);
                a1.r.quad.push_back(qr);
                a1.s.quad.push_back(qs);
                RSAtom<S> a2;
                a2.coef = scale2 * kappa * f.b;
                a2.r.expo = Rational(1);
                a2.r.quad.push_back(qr);
                a2.s.quad.push_back(qs);
                e.atoms.push_back(std::move(a1));
                e.atoms.push_back(std::move(a2));
            }
            e.notes.push_back(big ? "region: qr > |a| and qs > |b|" : "region: r > |a| and s > |b|");
            return e;
        }
        case Tag::series_qadd: {
            bool small = f.family == ExpFamily::small;
            if ((small && kind != TransformKind::k1) || (!small && kind != TransformKind::k2))
                throw catalog_miss("series q-addition pairs only as small/k1 and big/k2");
            RSExpr<S> e;
            const S zero = scalar_traits<S>::from_long(0);
            for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
                if (f.coeffs[n] == zero) continue;
                S cn = f.coeffs[n];
                if (!small) cn = cn * ctx.qpow(-static_cast<long>(n));
                for (long k = 0; k <= static_cast<long>(n); ++k) {
                    S c = cn * pow_int<S>(f.a, k) * pow_int<S>(f.b, static_cast<long>(n) - k);
                    e = e + RSExpr<S>::power_atom(c, Rational(-(k + 1)),
                                                  Rational(-(static_cast<long>(n) - k + 1)));
                }
            }
            return e;
        }
        case Tag::linear_combo: {
            RSExpr<S> e;
            for (std::size_t i = 0; i < f.combo_parts.size(); ++i)
                e = e + qlap2d_catalog<S>(f.combo_parts[i], kind, ctx) * f.combo_coefs[i];
            return e;
        }
    }
    throw catalog_miss("unsupported descriptor");
}

template <class S>
RSExpr<S> scaling_image(const Descriptor<S>& f, const S& a, const S& b, TransformKind kind, const QContext<S>& ctx) {
    const S zero = scalar_traits<S>::from_long(0);
    if (a == zero || b == zero) throw domain_error("scaling_image: scales must be nonzero");
    RSExpr<S> F = qlap2d_catalog<S>(f, kind, ctx);
    return F.subs_r_div(a).subs_s_div(b) * (scalar_traits<S>::from_long(1) / (a * b));
}

template <class S>
RSExpr<S> derivative_image(TransformKind kind, const DerivativeSpec& spec, const RSExpr<S>& F,
                           const BoundaryData<S>& bd, const QContext<S>& ctx) {
    using Tag = DerivativeSpec::Tag;
    const S one = scalar_traits<S>::from_long(1);
    if (kind == TransformKind::k1) {
        switch (spec.tag) {
            case Tag::dx:
                return F.mul_rpow(1) - embed(bd.x0(0), Axis::s);
            case Tag::dy:
                return F.mul_spow(1) - embed(bd.y0(0), Axis::r);
            case Tag::dxdy: {
                RSExpr<S> e = F.mul_rpow(1).mul_spow(1);
                e = e - embed(bd.y0(0), Axis::r).mul_rpow(1);
                e = e - embed(bd.x0(0), Axis::s).mul_spow(1);
                return e + RSExpr<S>::power_atom(bd.corner_value(), Rational(0), Rational(0));
            }
            case Tag::dxx:
            case Tag::dxn: {
                long n = spec.tag == Tag::dxx ? 2 : spec.n;
                RSExpr<S> e = F.mul_rpow(n);
                for (long k = 0; k < n; ++k) e = e - embed(bd.x0(k), Axis::s).mul_rpow(n - 1 - k);
                return e;
            }
            case Tag::dyy:
            case Tag::dyn: {
                long n = spec.tag == Tag::dyy ? 2 : spec.n;
                RSExpr<S> e = F.mul_spow(n);
                for (long k = 0; k < n; ++k) e = e - embed(bd.y0(k), Axis::r).mul_spow(n - 1 - k);
                return e;
            }
        }
    }
    if (kind == TransformKind::k2) {
        const S qinv = one / ctx.q;
        switch (spec.tag) {
            case Tag::dx:
                return F.subs_r_div(ctx.q).mul_rpow(1) * qinv - embed(bd.x0(0), Axis::s);
            case Tag::dy:
                return F.subs_s_div(ctx.q).mul_spow(1) * qinv - embed(bd.y0(0), Axis::r);
            case Tag::dxdy: {
                RSExpr<S> e = F.subs_r_div(ctx.q).subs_s_div(ctx.q).mul_rpow(1).mul_spow(1) * (qinv * qinv);
                e = e - embed(bd.y0(0).subs_div(ctx.q), Axis::r).mul_rpow(1) * qinv;
                e = e - embed(bd.x0(0).subs_div(ctx.q), Axis::s).mul_spow(1) * qinv;
                return e + RSExpr<S>::power_atom(bd.corner_value(), Rational(0), Rational(0));
            }
            case Tag::dxx: {
                RSExpr<S> e = F.subs_r_div(ctx.q * ctx.q).mul_rpow(2) * pow_int<S>(qinv, 3);
                e = e - embed(bd.x0(0), Axis::s).mul_rpow(1) * qinv;
                return e - embed(bd.x0(1), Axis::s);
            }
            case Tag::dyy: {
                RSExpr<S> e = F.subs_s_div(ctx.q * ctx.q).mul_spow(2) * pow_int<S>(qinv, 3);
                e = e - embed(bd.y0(0), Axis::r).mul_spow(1) * qinv;
                return e - embed(bd.y0(1), Axis::r);
            }
            case Tag::dxn:
            case Tag::dyn:
                throw domain_error("derivative_image: order-n images are defined for kind 1 only");
        }
    }
    throw domain_error("derivative_image: derivative theorems exist for kinds 1 and 2 only");
}

} // namespace qlt

#endif
