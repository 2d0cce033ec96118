#ifndef QLT_RSEXPR_HPP
#define QLT_RSEXPR_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlt/context.hpp"
#include "qlt/errors.hpp"

namespace qlt {

// (kappa*u - offset)^{-1}
template <class S>
struct LinFactor {
    S kappa;
    S offset;
};

// ((kappa*u)^2 + cons)^{-1}; cons > 0 is the trigonometric form, cons < 0 the
// hyperbolic form.
template <class S>
struct QuadFactor {
    S kappa;
    S cons;
};

// Per-variable rational piece u^expo / (lin factors * quad factors).
// expo may be any rational (negative exponents are reciprocal powers,
// positive ones numerator monomials).
template <class S>
struct VarPart {
    Rational expo{0};
    std::vector<LinFactor<S>> lin;
    std::vector<QuadFactor<S>> quad;

    bool trivial() const { return expo == 0 && lin.empty() && quad.empty(); }
};

// One additive atom: coef * rpart(r) * spart(s) * (s - slope*r)^{-1}.
// The mixed factor appears only in transform-domain solutions of the
// application solvers; catalog images never carry it.
template <class S>
struct RSAtom {
    S coef = scalar_traits<S>::from_long(0);
    VarPart<S> r, s;
    std::optional<S> mixed_slope;
};

namespace detail {

template <class S>
S pow_rational_exponent(const S& base, const Rational& e) {
    if (is_integer(e)) return pow_int<S>(base, to_long(e));
    if constexpr (scalar_traits<S>::exact) {
        // non-integer exponents only arise for half-integer monomial images
        Rational doubled = e * 2;
        if (is_integer(doubled)) {
            auto root = exact_sqrt(base);
            if (root) return pow_int<Rational>(*root, to_long(doubled));
        }
        throw exact_input_error("exact evaluation of a non-integer power is not representable");
    } else {
        return std::pow(base, to_double(e));
    }
}

template <class S>
S eval_varpart(const VarPart<S>& vp, const S& u) {
    const S zero = scalar_traits<S>::from_long(0);
    S acc = pow_rational_exponent<S>(u, vp.expo);
    for (auto& lf : vp.lin) {
        S den = lf.kappa * u - lf.offset;
        if (den == zero) throw pole_error("RSExpr evaluation hit a linear-factor pole");
        acc = acc / den;
    }
    for (auto& qf : vp.quad) {
        S ku = qf.kappa * u;
        S den = ku * ku + qf.cons;
        if (den == zero) throw pole_error("RSExpr evaluation hit a quadratic-factor pole");
        acc = acc / den;
    }
    return acc;
}

// substitution u -> u / c applied in place; returns the coefficient scale
template <class S>
S subs_div_varpart(VarPart<S>& vp, const S& c) {
    S scale = pow_rational_exponent<S>(scalar_traits<S>::from_long(1) / c, vp.expo);
    for (auto& lf : vp.lin) lf.kappa = lf.kappa / c;
    for (auto& qf : vp.quad) qf.kappa = qf.kappa / c;
    return scale;
}

template <class S>
int cmp_scalar(const S& a, const S& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

template <class S>
int cmp_varpart(const VarPart<S>& a, const VarPart<S>& b) {
    if (a.expo != b.expo) return a.expo < b.expo ? -1 : 1;
    if (a.lin.size() != b.lin.size()) return a.lin.size() < b.lin.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.lin.size(); ++i) {
        if (int c = cmp_scalar(a.lin[i].kappa, b.lin[i].kappa)) return c;
        if (int c = cmp_scalar(a.lin[i].offset, b.lin[i].offset)) return c;
    }
    if (a.quad.size() != b.quad.size()) return a.quad.size() < b.quad.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.quad.size(); ++i) {
        if (int c = cmp_scalar(a.quad[i].kappa, b.quad[i].kappa)) return c;
        if (int c = cmp_scalar(a.quad[i].cons, b.quad[i].cons)) return c;
    }
    return 0;
}

template <class S>
int cmp_atom_structure(const RSAtom<S>& a, const RSAtom<S>& b) {
    if (a.mixed_slope.has_value() != b.mixed_slope.has_value()) return a.mixed_slope ? 1 : -1;
    if (a.mixed_slope && b.mixed_slope)
        if (int c = cmp_scalar(*a.mixed_slope, *b.mixed_slope)) return c;
    if (int c = cmp_varpart(a.r, b.r)) return c;
    return cmp_varpart(a.s, b.s);
}

template <class S>
bool approx_eq(const S& a, const S& b, double tol) {
    return scalar_traits<S>::approx_equal(a, b, tol);
}

} // namespace detail

template <class S>
class RSExpr {
  public:
    std::vector<RSAtom<S>> atoms;
    std::vector<std::string> notes; // region requirements and similar flags

    RSExpr() = default;

    static RSExpr zero() { return RSExpr(); }

    // coef * r^er * s^es
    static RSExpr power_atom(S coef, Rational er, Rational es) {
        RSExpr e;
        RSAtom<S> a;
        a.coef = std::move(coef);
        a.r.expo = std::move(er);
        a.s.expo = std::move(es);
        e.atoms.push_back(std::move(a));
        return e;
    }

    bool is_zero() const { return atoms.empty(); }

    RSExpr operator+(const RSExpr& o) const {
        RSExpr e = *this;
        e.atoms.insert(e.atoms.end(), o.atoms.begin(), o.atoms.end());
        e.notes.insert(e.notes.end(), o.notes.begin(), o.notes.end());
        return e;
    }
    RSExpr operator-(const RSExpr& o) const { return *this + o * scalar_traits<S>::from_long(-1); }
    RSExpr operator*(const S& c) const {
        RSExpr e = *this;
        for (auto& a : e.atoms) a.coef = a.coef * c;
        return e;
    }

    // multiply by r^j (j may be negative)
    RSExpr mul_rpow(long j) const {
        RSExpr e = *this;
        for (auto& a : e.atoms) a.r.expo += Rational(j);
        return e;
    }
    RSExpr mul_spow(long j) const {
        RSExpr e = *this;
        for (auto& a : e.atoms) a.s.expo += Rational(j);
        return e;
    }

    // the expression evaluated at (r/c, s): the scaling/derivative-theorem
    // argument substitutions, recorded structurally in the factors
    RSExpr subs_r_div(const S& c) const {
        RSExpr e = *this;
        for (auto& a : e.atoms) {
            a.coef = a.coef * detail::subs_div_varpart(a.r, c);
            if (a.mixed_slope) *a.mixed_slope = *a.mixed_slope / c;
        }
        return e;
    }
    RSExpr subs_s_div(const S& c) const {
        RSExpr e = *this;
        for (auto& a : e.atoms) {
            a.coef = a.coef * detail::subs_div_varpart(a.s, c);
            if (a.mixed_slope) {
                // (s/c - w r)^{-1} = c (s - c w r)^{-1}
                a.coef = a.coef * c;
                *a.mixed_slope = *a.mixed_slope * c;
            }
        }
        return e;
    }

    S eval(const S& r, const S& s) const {
        const S zero = scalar_traits<S>::from_long(0);
        S acc = zero;
        for (auto& a : atoms) {
            S v = a.coef * detail::eval_varpart(a.r, r) * detail::eval_varpart(a.s, s);
            if (a.mixed_slope) {
                S den = s - (*a.mixed_slope) * r;
                if (den == zero) throw pole_error("RSExpr evaluation hit a mixed-factor pole");
                v = v / den;
            }
            acc = acc + v;
        }
        return acc;
    }

    std::string str() const {
        if (atoms.empty()) return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) os << " + ";
            os << atom_str(atoms[i]);
        }
        return os.str();
    }

    static std::string varpart_str(const VarPart<S>& vp, const char* u) {
        std::ostringstream os;
        if (vp.expo != 0) os << u << "^(" << qlt::to_string(vp.expo) << ")";
        for (auto& lf : vp.lin) {
            os << "/(";
            if (!(lf.kappa == scalar_traits<S>::from_long(1))) os << scalar_traits<S>::str(lf.kappa) << "*";
            os << u;
            S zero = scalar_traits<S>::from_long(0);
            if (!(lf.offset == zero)) os << (lf.offset > zero ? "-" : "+") << scalar_traits<S>::str(abs_of(lf.offset));
            os << ")";
        }
        for (auto& qf : vp.quad) {
            os << "/((";
            if (!(qf.kappa == scalar_traits<S>::from_long(1))) os << scalar_traits<S>::str(qf.kappa) << "*";
            os << u << ")^2";
            S zero = scalar_traits<S>::from_long(0);
            if (!(qf.cons == zero)) os << (qf.cons > zero ? "+" : "-") << scalar_traits<S>::str(abs_of(qf.cons));
            os << ")";
        }
        return os.str();
    }

  private:
    static S abs_of(const S& v) { return v < scalar_traits<S>::from_long(0) ? -v : v; }

    static std::string atom_str(const RSAtom<S>& a) {
        std::ostringstream os;
        os << "(" << scalar_traits<S>::str(a.coef) << ")";
        std::string rp = varpart_str(a.r, "r");
        std::string sp = varpart_str(a.s, "s");
        if (!rp.empty()) os << "*" << rp;
        if (!sp.empty()) os << "*" << sp;
        if (a.mixed_slope) os << "/(s-(" << scalar_traits<S>::str(*a.mixed_slope) << ")*r)";
        return os.str();
    }
};

// Univariate closed form (1-D transform images, boundary traces).
template <class S>
struct SAtom {
    S coef = scalar_traits<S>::from_long(0);
    VarPart<S> part;
};

template <class S>
class SExpr {
  public:
    std::vector<SAtom<S>> atoms;

    static SExpr zero() { return SExpr(); }
    static SExpr power_atom(S coef, Rational e) {
        SExpr s;
        SAtom<S> a;
        a.coef = std::move(coef);
        a.part.expo = std::move(e);
        s.atoms.push_back(std::move(a));
        return s;
    }
    bool is_zero() const { return atoms.empty(); }

    SExpr operator+(const SExpr& o) const {
        SExpr e = *this;
        e.atoms.insert(e.atoms.end(), o.atoms.begin(), o.atoms.end());
        return e;
    }
    SExpr operator*(const S& c) const {
        SExpr e = *this;
        for (auto& a : e.atoms) a.coef = a.coef * c;
        return e;
    }

    SExpr subs_div(const S& c) const {
        SExpr e = *this;
        for (auto& a : e.atoms) a.coef = a.coef * detail::subs_div_varpart(a.part, c);
        return e;
    }

    S eval(const S& u) const {
        S acc = scalar_traits<S>::from_long(0);
        for (auto& a : atoms) acc = acc + a.coef * detail::eval_varpart(a.part, u);
        return acc;
    }

    std::string str() const {
        if (atoms.empty()) return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) os << " + ";
            os << "(" << scalar_traits<S>::str(atoms[i].coef) << ")";
            std::string p = RSExpr<S>::varpart_str(atoms[i].part, "s");
            if (!p.empty()) os << "*" << p;
        }
        return os.str();
    }
};

enum class Axis { r, s };

// Lift a univariate expression onto one axis of the (r,s) plane.
template <class S>
RSExpr<S> embed(const SExpr<S>& e, Axis axis) {
    RSExpr<S> out;
    for (auto& a : e.atoms) {
        RSAtom<S> atom;
        atom.coef = a.coef;
        if (axis == Axis::r)
            atom.r = a.part;
        else
            atom.s = a.part;
        out.atoms.push_back(std::move(atom));
    }
    return out;
}

// Tensor product of two univariate expressions.
template <class S>
RSExpr<S> tensor(const SExpr<S>& fr, const SExpr<S>& fs) {
    RSExpr<S> out;
    for (auto& a : fr.atoms)
        for (auto& b : fs.atoms) {
            RSAtom<S> atom;
            atom.coef = a.coef * b.coef;
            atom.r = a.part;
            atom.s = b.part;
            out.atoms.push_back(std::move(atom));
        }
    return out;
}

namespace detail {

// Make every factor monic, folding scales into the coefficient, and absorb
// offset-free factors into the power exponent.
template <class S>
void canonicalize_atom(RSAtom<S>& a, double tol) {
    const S zero = scalar_traits<S>::from_long(0);
    const S one = scalar_traits<S>::from_long(1);
    for (VarPart<S>* vp : {&a.r, &a.s}) {
        std::vector<LinFactor<S>> lin;
        for (auto lf : vp->lin) {
            if (!(approx_eq(lf.kappa, one, tol))) {
                a.coef = a.coef / lf.kappa;
                lf.offset = lf.offset / lf.kappa;
                lf.kappa = one;
            }
            if (approx_eq(lf.offset, zero, tol)) {
                vp->expo -= 1;
            } else {
                lin.push_back(lf);
            }
        }
        vp->lin = std::move(lin);
        std::vector<QuadFactor<S>> quad;
        for (auto qf : vp->quad) {
            if (!(approx_eq(qf.kappa, one, tol))) {
                a.coef = a.coef / (qf.kappa * qf.kappa);
                qf.cons = qf.cons / (qf.kappa * qf.kappa);
                qf.kappa = one;
            }
            if (approx_eq(qf.cons, zero, tol)) {
                vp->expo -= 2;
            } else {
                quad.push_back(qf);
            }
        }
        vp->quad = std::move(quad);
        auto lin_less = [](const LinFactor<S>& x, const LinFactor<S>& y) { return x.offset < y.offset; };
        auto quad_less = [](const QuadFactor<S>& x, const QuadFactor<S>& y) { return x.cons < y.cons; };
        std::sort(vp->lin.begin(), vp->lin.end(), lin_less);
        std::sort(vp->quad.begin(), vp->quad.end(), quad_less);
    }
}

template <class S>
int cmp_varpart_quads(const VarPart<S>& a, const VarPart<S>& b) {
    if (a.quad.size() != b.quad.size()) return a.quad.size() < b.quad.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.quad.size(); ++i) {
        if (int c = cmp_scalar(a.quad[i].kappa, b.quad[i].kappa)) return c;
        if (int c = cmp_scalar(a.quad[i].cons, b.quad[i].cons)) return c;
    }
    return 0;
}

// c1/(u-o) + c2/(u+o) with c1 = +-c2 collapses to a single quadratic atom.
template <class S>
bool try_conjugate_merge(RSAtom<S>& a, RSAtom<S>& b, double tol) {
    const S zero = scalar_traits<S>::from_long(0);
    const S two = scalar_traits<S>::from_long(2);
    if (a.mixed_slope || b.mixed_slope) return false;
    for (int which = 0; which < 2; ++which) {
        VarPart<S>&av = which ? a.s : a.r;
        VarPart<S>&bv = which ? b.s : b.r;
        const VarPart<S>& ao = which ? a.r : a.s;
        const VarPart<S>& bo = which ? b.r : b.s;
        if (cmp_varpart(ao, bo) != 0) continue;
        if (av.expo != bv.expo || av.lin.size() != 1 || bv.lin.size() != 1) continue;
        if (cmp_varpart_quads(av, bv) != 0) continue;
        S oa = av.lin[0].offset, ob = bv.lin[0].offset;
        if (approx_eq(oa, zero, tol) || !approx_eq(oa, -ob, tol)) continue;
        bool same = approx_eq(a.coef, b.coef, tol);
        bool opposite = approx_eq(a.coef, -b.coef, tol);
        if (!same && !opposite) continue;
        QuadFactor<S> qf{scalar_traits<S>::from_long(1), -(oa * oa)};
        av.lin.clear();
        av.quad.push_back(qf);
        std::sort(av.quad.begin(), av.quad.end(),
                  [](const QuadFactor<S>& x, const QuadFactor<S>& y) { return x.cons < y.cons; });
        if (same) {
            av.expo += 1;
            a.coef = two * a.coef;
        } else {
            a.coef = two * a.coef * oa;
        }
        b.coef = zero;
        return true;
    }
    return false;
}

} // namespace detail

// Canonical form: monic factors, like atoms combined, zero atoms dropped,
// equal-coefficient conjugate linear pairs folded into quadratic atoms.
// Evaluation at any point is preserved exactly.
template <class S>
RSExpr<S> normalize(const RSExpr<S>& e, double tol = 1e-11) {
    const S zero = scalar_traits<S>::from_long(0);
    RSExpr<S> out;
    out.notes = e.notes;
    for (auto atom : e.atoms) {
        if (detail::approx_eq(atom.coef, zero, 0.0)) continue;
        detail::canonicalize_atom(atom, tol);
        out.atoms.push_back(std::move(atom));
    }
    auto combine = [&]() {
        std::sort(out.atoms.begin(), out.atoms.end(),
                  [](const RSAtom<S>& a, const RSAtom<S>& b) { return detail::cmp_atom_structure(a, b) < 0; });
        std::vector<RSAtom<S>> merged;
        for (auto& atom : out.atoms) {
            if (!merged.empty() && detail::cmp_atom_structure(merged.back(), atom) == 0) {
                merged.back().coef = merged.back().coef + atom.coef;
            } else {
                merged.push_back(atom);
            }
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [&](const RSAtom<S>& a) { return detail::approx_eq(a.coef, zero, 1e-14); }),
                     merged.end());
        out.atoms = std::move(merged);
    };
    combine();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < out.atoms.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < out.atoms.size() && !changed; ++j)
                if (detail::try_conjugate_merge(out.atoms[i], out.atoms[j], tol)) changed = true;
        if (changed) combine();
    }
    return out;
}

template <class S>
SExpr<S> normalize(const SExpr<S>& e, double tol = 1e-11) {
    RSExpr<S> lifted = embed(e, Axis::s);
    RSExpr<S> n = normalize(lifted, tol);
    SExpr<S> out;
    for (auto& a : n.atoms) {
        if (!a.r.trivial() || a.mixed_slope) throw error("SExpr normalize: unexpected r-dependence");
        SAtom<S> sa;
        sa.coef = a.coef;
        sa.part = a.s;
        out.atoms.push_back(std::move(sa));
    }
    return out;
}

template <class S>
bool structurally_equal(const RSExpr<S>& a, const RSExpr<S>& b, double tol = 1e-11) {
    RSExpr<S> na = normalize(a, tol), nb = normalize(b, tol);
    if (na.atoms.size() != nb.atoms.size()) return false;
    for (std::size_t i = 0; i < na.atoms.size(); ++i) {
        if (detail::cmp_atom_structure(na.atoms[i], nb.atoms[i]) != 0) return false;
        if (!detail::approx_eq(na.atoms[i].coef, nb.atoms[i].coef, tol)) return false;
    }
    return true;
}

} // namespace qlt

#endif
