#ifndef QLT_DESCRIPTOR_HPP
#define QLT_DESCRIPTOR_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qlt/context.hpp"
#include "qlt/errors.hpp"
#include "qlt/qcore.hpp"
#include "qlt/qspecial.hpp"

namespace qlt {

// The four double-transform kinds, identified by their kernel pair.
//   k1: E_q x-kernel, E_q y-kernel     k2: e_q, e_q
//   k3: e_q, E_q                       k4: E_q, e_q
enum class TransformKind { k1 = 1, k2 = 2, k3 = 3, k4 = 4 };

enum class Kind1D { first, second }; // E_q(-q s t) kernel vs e_q(-s t) kernel

inline Kind1D axis_kind_x(TransformKind k) {
    return (k == TransformKind::k1 || k == TransformKind::k4) ? Kind1D::first : Kind1D::second;
}
inline Kind1D axis_kind_y(TransformKind k) {
    return (k == TransformKind::k1 || k == TransformKind::k3) ? Kind1D::first : Kind1D::second;
}

inline const char* to_string(TransformKind k) {
    switch (k) {
        case TransformKind::k1: return "1";
        case TransformKind::k2: return "2";
        case TransformKind::k3: return "3";
        case TransformKind::k4: return "4";
    }
    return "?";
}

enum class ExpFamily { small, big };

// One-variable integrand atom.
template <class S>
struct Atom1D {
    enum class Tag { zero, constant, monomial, exp_small, exp_big, trig };
    Tag tag = Tag::constant;
    Rational alpha{0}; // monomial exponent, > -1
    S a = scalar_traits<S>::from_long(0);
    TrigKind trig = TrigKind::cos_small;

    static Atom1D zero() { return Atom1D{Tag::zero, Rational(0), scalar_traits<S>::from_long(0), TrigKind::cos_small}; }
    static Atom1D constant() { return Atom1D{}; }
    static Atom1D monomial(Rational alpha_) {
        if (!(alpha_ > Rational(-1))) throw domain_error("Atom1D::monomial: exponent must exceed -1");
        return Atom1D{Tag::monomial, std::move(alpha_), scalar_traits<S>::from_long(0), TrigKind::cos_small};
    }
    static Atom1D exp_small(S a_) { return Atom1D{Tag::exp_small, Rational(0), std::move(a_), TrigKind::cos_small}; }
    static Atom1D exp_big(S a_) { return Atom1D{Tag::exp_big, Rational(0), std::move(a_), TrigKind::cos_small}; }
    static Atom1D trig_atom(TrigKind which, S a_) { return Atom1D{Tag::trig, Rational(0), std::move(a_), which}; }

    bool operator==(const Atom1D& o) const {
        return tag == o.tag && alpha == o.alpha && a == o.a && trig == o.trig;
    }

    std::string str() const {
        std::ostringstream os;
        switch (tag) {
            case Tag::zero: os << "0"; break;
            case Tag::constant: os << "1"; break;
            case Tag::monomial: os << "t^(" << qlt::to_string(alpha) << ")"; break;
            case Tag::exp_small: os << "e_q(" << scalar_traits<S>::str(a) << "*t)"; break;
            case Tag::exp_big: os << "E_q(" << scalar_traits<S>::str(a) << "*t)"; break;
            case Tag::trig: os << qlt::to_string(trig) << "(" << scalar_traits<S>::str(a) << "*t)"; break;
        }
        return os.str();
    }
};

// Symbolic tag for a two-variable integrand. A tree: linear_combo nodes hold
// weighted children, every other node is a leaf.
template <class S>
class Descriptor {
  public:
    enum class Tag { monomial, separable, qadd_power, exp_qadd, trig_qadd, series_qadd, linear_combo };

    Tag tag = Tag::monomial;
    Rational ax{0}, ay{0};                   // monomial exponents
    Atom1D<S> gx, hy;                        // separable parts
    S a = scalar_traits<S>::from_long(0);    // first parameter / alpha of series
    S b = scalar_traits<S>::from_long(0);    // second parameter / beta of series
    long n = 0;                              // q-addition power
    AdditionKind add_kind = AdditionKind::ward_add;
    ExpFamily family = ExpFamily::small;
    TrigKind trig = TrigKind::cos_small;
    std::vector<S> coeffs;                   // series coefficients a_0..a_N
    std::vector<S> combo_coefs;
    std::vector<Descriptor> combo_parts;

    static Descriptor monomial(Rational ax_, Rational ay_) {
        if (!(ax_ > Rational(-1)) || !(ay_ > Rational(-1)))
            throw domain_error("Descriptor::monomial: exponents must exceed -1");
        Descriptor d;
        d.tag = Tag::monomial;
        d.ax = std::move(ax_);
        d.ay = std::move(ay_);
        return d;
    }
    static Descriptor separable(Atom1D<S> gx_, Atom1D<S> hy_) {
        Descriptor d;
        d.tag = Tag::separable;
        d.gx = std::move(gx_);
        d.hy = std::move(hy_);
        return d;
    }
    static Descriptor qadd_power(S a_, S b_, long n_, AdditionKind kind) {
        if (n_ < 0) throw domain_error("Descriptor::qadd_power: negative power");
        if (kind != AdditionKind::ward_add && kind != AdditionKind::coadd && kind != AdditionKind::qpow_add)
            throw domain_error("Descriptor::qadd_power: kind must be ward_add, coadd or qpow_add");
        Descriptor d;
        d.tag = Tag::qadd_power;
        d.a = std::move(a_);
        d.b = std::move(b_);
        d.n = n_;
        d.add_kind = kind;
        return d;
    }
    static Descriptor exp_qadd(S a_, S b_, ExpFamily fam) {
        Descriptor d;
        d.tag = Tag::exp_qadd;
        d.a = std::move(a_);
        d.b = std::move(b_);
        d.family = fam;
        return d;
    }
    static Descriptor trig_qadd(S a_, S b_, TrigKind which) {
        Descriptor d;
        d.tag = Tag::trig_qadd;
        d.a = std::move(a_);
        d.b = std::move(b_);
        d.trig = which;
        d.family = trig_is_big(which) ? ExpFamily::big : ExpFamily::small;
        return d;
    }
    static Descriptor series_qadd(std::vector<S> coeffs_, S alpha, S beta, ExpFamily fam) {
        Descriptor d;
        d.tag = Tag::series_qadd;
        d.coeffs = std::move(coeffs_);
        d.a = std::move(alpha);
        d.b = std::move(beta);
        d.family = fam;
        return d;
    }
    static Descriptor linear_combo(std::vector<S> coefs, std::vector<Descriptor> parts) {
        if (coefs.size() != parts.size()) throw domain_error("Descriptor::linear_combo: size mismatch");
        Descriptor d;
        d.tag = Tag::linear_combo;
        d.combo_coefs = std::move(coefs);
        d.combo_parts = std::move(parts);
        return d;
    }
    static Descriptor zero() { return linear_combo({}, {}); }

    bool is_zero() const { return tag == Tag::linear_combo && combo_parts.empty(); }

    std::string str() const {
        std::ostringstream os;
        switch (tag) {
            case Tag::monomial: os << "x^(" << qlt::to_string(ax) << ")*y^(" << qlt::to_string(ay) << ")"; break;
            case Tag::separable: os << gx.str() << " (x) * " << hy.str() << " (y)"; break;
            case Tag::qadd_power:
                os << "(" << scalar_traits<S>::str(a) << "x [" << qlt::to_string(add_kind) << "] "
                   << scalar_traits<S>::str(b) << "y)^" << n;
                break;
            case Tag::exp_qadd:
                os << (family == ExpFamily::small ? "e_q" : "E_q") << "(" << scalar_traits<S>::str(a) << "x (+) "
                   << scalar_traits<S>::str(b) << "y)";
                break;
            case Tag::trig_qadd:
                os << qlt::to_string(trig) << "(" << scalar_traits<S>::str(a) << "x (+) " << scalar_traits<S>::str(b)
                   << "y)";
                break;
            case Tag::series_qadd: {
                os << "series[";
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    if (i) os << ",";
                    os << scalar_traits<S>::str(coeffs[i]);
                }
                os << "](" << scalar_traits<S>::str(a) << "x (+) " << scalar_traits<S>::str(b) << "y)";
                break;
            }
            case Tag::linear_combo: {
                if (combo_parts.empty()) return "0";
                for (std::size_t i = 0; i < combo_parts.size(); ++i) {
                    if (i) os << " + ";
                    os << scalar_traits<S>::str(combo_coefs[i]) << "*(" << combo_parts[i].str() << ")";
                }
                break;
            }
        }
        return os.str();
    }
};

template <class S>
Atom1D<double> to_float(const Atom1D<S>& a) {
    Atom1D<double> r;
    r.tag = static_cast<typename Atom1D<double>::Tag>(static_cast<int>(a.tag));
    r.alpha = a.alpha;
    r.a = scalar_traits<S>::to_double(a.a);
    r.trig = a.trig;
    return r;
}

template <class S>
Descriptor<double> to_float(const Descriptor<S>& d) {
    Descriptor<double> r;
    r.tag = static_cast<typename Descriptor<double>::Tag>(static_cast<int>(d.tag));
    r.ax = d.ax;
    r.ay = d.ay;
    r.gx = to_float(d.gx);
    r.hy = to_float(d.hy);
    r.a = scalar_traits<S>::to_double(d.a);
    r.b = scalar_traits<S>::to_double(d.b);
    r.n = d.n;
    r.add_kind = d.add_kind;
    r.family = d.family;
    r.trig = d.trig;
    for (auto& c : d.coeffs) r.coeffs.push_back(scalar_traits<S>::to_double(c));
    for (auto& c : d.combo_coefs) r.combo_coefs.push_back(scalar_traits<S>::to_double(c));
    for (auto& p : d.combo_parts) r.combo_parts.push_back(to_float(p));
    return r;
}

// ---- pointwise evaluation (float mode) -------------------------------------

double atom1d_eval(const Atom1D<double>& atom, double t, const FloatContext& ctx);

double descriptor_eval(const Descriptor<double>& d, double x, double y, const FloatContext& ctx);

LatticeFunction2D descriptor_function(const Descriptor<double>& d, const FloatContext& ctx);

// Finite sum-of-separable-products form: every descriptor expands to
// sum_i coef_i * fx_i(x) * fy_i(y).
struct SepTerm {
    double coef;
    Atom1D<double> fx, fy;
};

std::vector<SepTerm> separable_terms(const Descriptor<double>& d, const FloatContext& ctx);

// Convergence-region guard for an atom integrated against the axis kernel of
// frequency `freq`; throws divergence_error naming the axis.
void check_axis_region(const Atom1D<double>& atom, Kind1D axis_kind, double freq, const FloatContext& ctx,
                       const char* axis_name);

// ---- CLI / bindings grammar ------------------------------------------------
//   mono:a,b            qaddpow:a,b,n,kind      expqadd:a,b,family
//   trig:sel,a,b,family sep:atom|atom           lin:c1*d1+c2*d2
// 1-D atoms: zero | const | mono:a | eq:a | Eq:a | trig:sel,a
template <class S>
Descriptor<S> parse_descriptor(const std::string& text);

template <class S>
Atom1D<S> parse_atom1d(const std::string& text);

extern template Descriptor<double> parse_descriptor<double>(const std::string&);
extern template Descriptor<Rational> parse_descriptor<Rational>(const std::string&);
extern template Atom1D<double> parse_atom1d<double>(const std::string&);
extern template Atom1D<Rational> parse_atom1d<Rational>(const std::string&);

} // namespace qlt

#endif
