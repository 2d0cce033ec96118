#ifndef QLT_QAPPS_HPP
#define QLT_QAPPS_HPP

#include <optional>
#include <string>

#include "qlt/qsymbolic.hpp"
#include "qlt/qtransform2.hpp"

namespace qlt {

enum class EquationId { cauchy_ward, cauchy_coadd, abel_ward, abel_coadd, transport, telegraph, wave };

const char* to_string(EquationId id);
std::optional<EquationId> parse_equation_id(const std::string& name);

struct SolutionReport {
    EquationId id = EquationId::transport;
    // 2-D solution descriptor (transport/telegraph/wave) when inversion succeeded
    bool has_descriptor = false;
    Descriptor<Rational> descriptor = Descriptor<Rational>::zero();
    // 1-D solution terms for the functional equations
    std::vector<Inverse1DTerm<Rational>> solution_1d;
    RSExpr<Rational> transform_domain;
    bool inversion_complete = true;
    bool residual_exact = false; // coefficient-wise zero residual (exact mode)
    double residual_max = 0.0;
    long lattice_points_checked = 0;
    double transform_check_error = -1.0; // two-path transform-domain agreement when computed
    std::string form;                    // human-readable solution
};

// Divide an expression whose atoms depend on r only or on s only by the
// sloped factor (s - slope*r). Reciprocal s-powers and single linear s-factors
// reduce to catalog atoms plus sloped remainders; anything else keeps the
// sloped factor unreduced.
template <class S>
RSExpr<S> divide_by_sloped(const RSExpr<S>& e, const S& slope) {
    const S zero = scalar_traits<S>::from_long(0);
    const S one = scalar_traits<S>::from_long(1);
    if (slope == zero) throw domain_error("divide_by_sloped: zero slope");
    RSExpr<S> out;
    out.notes = e.notes;
    for (const auto& atom : e.atoms) {
        if (atom.mixed_slope) throw error("divide_by_sloped: atom already carries a sloped factor");
        const bool s_trivial = atom.s.trivial();
        const bool s_pure_recip = atom.s.lin.empty() && atom.s.quad.empty() && is_integer(atom.s.expo) &&
                                  atom.s.expo < Rational(0);
        const bool s_single_lin = atom.s.lin.size() == 1 && atom.s.quad.empty() && atom.s.expo == 0;
        if (s_trivial) {
            RSAtom<S> a = atom;
            a.mixed_slope = slope;
            out.atoms.push_back(std::move(a));
        } else if (s_pure_recip) {
            // 1/(s^m (s-W)) = W^{-m}/(s-W) - sum_j W^{-(m-j+1)} s^{-j},  W = slope*r
            long m = -to_long(atom.s.expo);
            RSAtom<S> tail = atom;
            tail.coef = tail.coef * pow_int<S>(slope, -m);
            tail.r.expo += Rational(-m);
            tail.s.expo = Rational(0);
            tail.mixed_slope = slope;
            out.atoms.push_back(std::move(tail));
            for (long j = 1; j <= m; ++j) {
                RSAtom<S> a = atom;
                a.coef = -a.coef * pow_int<S>(slope, -(m - j + 1));
                a.r.expo += Rational(-(m - j + 1));
                a.s.expo = Rational(-j);
                out.atoms.push_back(std::move(a));
            }
        } else if (s_single_lin) {
            // 1/((s-w)(s-W)) = [1/(s-W) - 1/(s-w)] / (W-w) and
            // 1/(W-w) = (1/slope) / (r - w/slope)
            S w = atom.s.lin[0].offset / atom.s.lin[0].kappa;
            S lead = atom.s.lin[0].kappa;
            LinFactor<S> rfac{one, w / slope};
            RSAtom<S> a1 = atom;
            a1.coef = a1.coef / (lead * slope);
            a1.s.lin.clear();
            a1.r.lin.push_back(rfac);
            a1.mixed_slope = slope;
            RSAtom<S> a2 = atom;
            a2.coef = -a2.coef / (lead * slope);
            a2.r.lin.push_back(rfac);
            out.atoms.push_back(std::move(a1));
            out.atoms.push_back(std::move(a2));
        } else {
            RSAtom<S> a = atom;
            a.mixed_slope = slope;
            out.atoms.push_back(std::move(a));
        }
    }
    return out;
}

// Functional equations f(x (+) y) = f(x)+f(y) (Cauchy) or f(x)f(y) (Abel)
// under the Ward sum (kind 1) or the coaddition (kind 2). Replays the
// transform-method derivation, verifies the separated transform identity
// exactly, inverts the 1-D image, and checks the solution coefficient-wise.
SolutionReport solve_functional(EquationId id, const ExactContext& ctx, const Rational& k = Rational(1));

// u_t + c u_x = 0 with u(x,0) = f(x), u(0,t) = g(t).
SolutionReport solve_transport(const Rational& c, const Atom1D<Rational>& f, const Atom1D<Rational>& g,
                               const ExactContext& ctx);

// Residual verification of the closed-form solution of the non-homogeneous
// space-time q-telegraph equation.
SolutionReport verify_telegraph(double c, double alpha, double beta, const ExactContext& ctx);

// u_tt - c^2 u_xx = 0 with u(x,0) = f(x), u_t(x,0) = g(x).
SolutionReport solve_wave(const Rational& c, const Atom1D<Rational>& f, const Atom1D<Rational>& g,
                          const ExactContext& ctx);

} // namespace qlt

#endif
