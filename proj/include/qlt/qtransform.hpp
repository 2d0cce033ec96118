#ifndef QLT_QTRANSFORM_HPP
#define QLT_QTRANSFORM_HPP

#include <optional>

#include "qlt/descriptor.hpp"
#include "qlt/qcalc.hpp"
#include "qlt/qcore.hpp"
#include "qlt/qspecial.hpp"
#include "qlt/rsexpr.hpp"

namespace qlt {

// First-kind transforms integrate f(t) E_q(-q s t) on the kernel-adapted
// lattice A = (1-q)s, where the kernel vanishes identically for k < 0 and the
// sum truncates naturally.  Second-kind transforms integrate f(t) e_q(-s t)
// on the A = 1 lattice by default.
double qlap1d_numeric(const LatticeFunction1D& f, double s, Kind1D kind, const FloatContext& ctx,
                      const std::optional<LatticeSumPlan>& plan_override = std::nullopt);

// Region-checked numeric transform of a catalog atom.
double qlap1d_numeric(const Atom1D<double>& atom, double s, Kind1D kind, const FloatContext& ctx,
                      const std::optional<LatticeSumPlan>& plan_override = std::nullopt);

// Kernel value at lattice index k for a first-kind axis on its adapted
// lattice: (q^{k+1}; q)_inf, exactly zero for k < 0.
double first_kind_kernel_term(long k, const FloatContext& ctx);

// Lattice plan for a first-kind axis: scale A = (1-q)*freq, under which the
// kernel zeros annihilate every k < 0 term.
LatticeSumPlan first_kind_adapted_plan(double freq, const FloatContext& ctx);

// Axis sums sum_k (1-q) x_k atom_i(x_k) K(x_k), one per listed atom, sharing
// one lattice window. The atom and the kernel are evaluated as a fused
// product: for E_q-family atoms against the e_q kernel the two factors
// overflow/underflow separately long before their product becomes negligible,
// so the product is accumulated as a joint ratio of the two q-products.
std::vector<double> axis_fused_sums(Kind1D kind, double freq, const FloatContext& ctx,
                                    const std::vector<Atom1D<double>>& atoms,
                                    const std::optional<LatticeSumPlan>& plan_override, const char* axis_name);

// ---- closed forms -----------------------------------------------------------

// First kind:  t^alpha -> Gamma_q(alpha+1)/s^{alpha+1};  e_q(at) -> 1/(s-a);
//              cos/sin/cosh/sinh images with denominator s^2 +- a^2.
// Second kind: t^alpha -> gamma_q(alpha+1)/s^{alpha+1};  E_q(at) -> q/(qs-a);
//              big-trig images with denominator (qs)^2 +- a^2.
template <class S>
SExpr<S> qlap1d_catalog(const Atom1D<S>& atom, Kind1D kind, const QContext<S>& ctx);

// Gamma-function normalizer of the axis: Gamma_q(p) or gamma_q(p).
// Integer arguments are exact; non-integer arguments require float mode.
template <class S>
S axis_gamma(Kind1D kind, const Rational& p, const QContext<S>& ctx);

// ---- implementation of the templated parts ----------------------------------

template <class S>
S axis_gamma(Kind1D kind, const Rational& p, const QContext<S>& ctx) {
    if (!(p > Rational(0))) throw domain_error("axis_gamma: argument must be positive");
    if (is_integer(p)) {
        long n = to_long(p);
        S g = q_factorial<S>(n - 1, ctx);
        if (kind == Kind1D::second) g = g * ctx.qpow(-binom2(n));
        return g;
    }
    if constexpr (scalar_traits<S>::exact) {
        throw exact_input_error("axis_gamma: non-integer argument requires float mode");
    } else {
        FloatContext f(ctx.q, ctx.tol, ctx.max_terms);
        return kind == Kind1D::first ? q_gamma_first(to_double(p), f) : q_gamma_second(to_double(p), f);
    }
}

template <class S>
SExpr<S> qlap1d_catalog(const Atom1D<S>& atom, Kind1D kind, const QContext<S>& ctx) {
    using Tag = typename Atom1D<S>::Tag;
    const S one = scalar_traits<S>::from_long(1);
    switch (atom.tag) {
        case Tag::zero:
            return SExpr<S>::zero();
        case Tag::constant:
            return SExpr<S>::power_atom(one, Rational(-1));
        case Tag::monomial: {
            Rational p = atom.alpha + 1;
            // non-integer moments against the e_q kernel are a convention of
            // the A = 1 lattice; gamma_q(p) is computed on that same lattice
            return SExpr<S>::power_atom(axis_gamma<S>(kind, p, ctx), -p);
        }
        case Tag::exp_small: {
            if (kind != Kind1D::first)
                throw catalog_miss("no closed form for e_q(at) under the e_q-kernel transform");
            SExpr<S> e;
            SAtom<S> a;
            a.coef = one;
            a.part.lin.push_back({one, atom.a});
            e.atoms.push_back(std::move(a));
            return e;
        }
        case Tag::exp_big: {
            if (kind != Kind1D::second)
                throw catalog_miss("no closed form for E_q(at) under the E_q-kernel transform");
            SExpr<S> e;
            SAtom<S> a;
            a.coef = ctx.q;
            a.part.lin.push_back({ctx.q, atom.a});
            e.atoms.push_back(std::move(a));
            return e;
        }
        case Tag::trig: {
            bool big = trig_is_big(atom.trig);
            if ((kind == Kind1D::first) == big)
                throw catalog_miss("trig family does not pair with this transform kind");
            S kappa = big ? ctx.q : one;
            S scale = big ? ctx.q : one; // q/(qs-ia)-type images carry one q per factor pair
            S aa = atom.a * atom.a;
            bool hyperbolic = (atom.trig == TrigKind::cosh_small || atom.trig == TrigKind::cosh_big ||
                               atom.trig == TrigKind::sinh_small || atom.trig == TrigKind::sinh_big);
            bool even = (atom.trig == TrigKind::cos_small || atom.trig == TrigKind::cos_big ||
                         atom.trig == TrigKind::cosh_small || atom.trig == TrigKind::cosh_big);
            QuadFactor<S> qf{kappa, hyperbolic ? -aa : aa};
            SAtom<S> a;
            a.part.quad.push_back(qf);
            if (even) {
                // cos: kappa*scale*s / ((kappa s)^2 + a^2)
                a.coef = scale * kappa;
                a.part.expo = Rational(1);
            } else {
                a.coef = scale * atom.a;
            }
            SExpr<S> e;
            e.atoms.push_back(std::move(a));
            return e;
        }
    }
    throw catalog_miss("unsupported 1-D atom");
}

} // namespace qlt

#endif
