#include "qlt/descriptor.hpp"

#include <cmath>

namespace qlt {

double atom1d_eval(const Atom1D<double>& atom, double t, const FloatContext& ctx) {
    using Tag = Atom1D<double>::Tag;
    switch (atom.tag) {
        case Tag::zero: return 0.0;
        case Tag::constant: return 1.0;
        case Tag::monomial: {
            double alpha = to_double(atom.alpha);
            if (is_integer(atom.alpha) && atom.alpha >= Rational(0)) {
                double acc = 1.0;
                for (long i = 0; i < to_long(atom.alpha); ++i) acc *= t;
                return acc;
            }
            return std::pow(t, alpha);
        }
        case Tag::exp_small: return q_exp_small(atom.a * t, ctx);
        case Tag::exp_big: return q_exp_big(atom.a * t, ctx);
        case Tag::trig: return q_trig(atom.a * t, atom.trig, ctx);
    }
    return 0.0;
}

namespace {

using DTag = Descriptor<double>::Tag;
using ATag = Atom1D<double>::Tag;
using A = Atom1D<double>;

void append_trig_terms(std::vector<SepTerm>& out, double coef, const Descriptor<double>& d) {
    bool big = trig_is_big(d.trig);
    TrigKind cos_k = big ? TrigKind::cos_big : TrigKind::cos_small;
    TrigKind sin_k = big ? TrigKind::sin_big : TrigKind::sin_small;
    TrigKind cosh_k = big ? TrigKind::cosh_big : TrigKind::cosh_small;
    TrigKind sinh_k = big ? TrigKind::sinh_big : TrigKind::sinh_small;
    switch (d.trig) {
        case TrigKind::cos_small:
        case TrigKind::cos_big:
            out.push_back({coef, A::trig_atom(cos_k, d.a), A::trig_atom(cos_k, d.b)});
            out.push_back({-coef, A::trig_atom(sin_k, d.a), A::trig_atom(sin_k, d.b)});
            break;
        case TrigKind::sin_small:
        case TrigKind::sin_big:
            out.push_back({coef, A::trig_atom(sin_k, d.a), A::trig_atom(cos_k, d.b)});
            out.push_back({coef, A::trig_atom(cos_k, d.a), A::trig_atom(sin_k, d.b)});
            break;
        case TrigKind::cosh_small:
        case TrigKind::cosh_big:
            out.push_back({coef, A::trig_atom(cosh_k, d.a), A::trig_atom(cosh_k, d.b)});
            out.push_back({coef, A::trig_atom(sinh_k, d.a), A::trig_atom(sinh_k, d.b)});
            break;
        case TrigKind::sinh_small:
        case TrigKind::sinh_big:
            out.push_back({coef, A::trig_atom(cosh_k, d.a), A::trig_atom(sinh_k, d.b)});
            out.push_back({coef, A::trig_atom(sinh_k, d.a), A::trig_atom(cosh_k, d.b)});
            break;
    }
}

void collect_terms(std::vector<SepTerm>& out, double coef, const Descriptor<double>& d, const FloatContext& ctx) {
    switch (d.tag) {
        case DTag::monomial:
            out.push_back({coef, A::monomial(d.ax), A::monomial(d.ay)});
            break;
        case DTag::separable:
            out.push_back({coef, d.gx, d.hy});
            break;
        case DTag::qadd_power: {
            QPoly2<double> p = expand_q_addition<double>(d.add_kind, d.n, ctx).scale_args(d.a, d.b);
            for (auto& [key, c] : p.terms())
                out.push_back({coef * c, A::monomial(Rational(key.first)), A::monomial(Rational(key.second))});
            break;
        }
        case DTag::exp_qadd:
            if (d.family == ExpFamily::small)
                out.push_back({coef, A::exp_small(d.a), A::exp_small(d.b)});
            else
                out.push_back({coef, A::exp_big(d.a), A::exp_big(d.b)});
            break;
        case DTag::trig_qadd:
            append_trig_terms(out, coef, d);
            break;
        case DTag::series_qadd: {
            AdditionKind k = d.family == ExpFamily::small ? AdditionKind::ward_add : AdditionKind::coadd;
            QPoly2<double> p = series_q_compose<double>(d.coeffs, k, d.a, d.b, ctx);
            for (auto& [key, c] : p.terms())
                out.push_back({coef * c, A::monomial(Rational(key.first)), A::monomial(Rational(key.second))});
            break;
        }
        case DTag::linear_combo:
            for (std::size_t i = 0; i < d.combo_parts.size(); ++i)
                collect_terms(out, coef * d.combo_coefs[i], d.combo_parts[i], ctx);
            break;
    }
}

} // namespace

std::vector<SepTerm> separable_terms(const Descriptor<double>& d, const FloatContext& ctx) {
    std::vector<SepTerm> out;
    collect_terms(out, 1.0, d, ctx);
    return out;
}

double descriptor_eval(const Descriptor<double>& d, double x, double y, const FloatContext& ctx) {
    double acc = 0.0;
    for (auto& t : separable_terms(d, ctx)) acc += t.coef * atom1d_eval(t.fx, x, ctx) * atom1d_eval(t.fy, y, ctx);
    return acc;
}

LatticeFunction2D descriptor_function(const Descriptor<double>& d, const FloatContext& ctx) {
    auto terms = separable_terms(d, ctx);
    return [terms, ctx](double x, double y) {
        double acc = 0.0;
        for (auto& t : terms) acc += t.coef * atom1d_eval(t.fx, x, ctx) * atom1d_eval(t.fy, y, ctx);
        return acc;
    };
}

void check_axis_region(const Atom1D<double>& atom, Kind1D axis_kind, double freq, const FloatContext& ctx,
                       const char* axis_name) {
    auto fail = [&](const std::string& what) {
        throw divergence_error(std::string(axis_name) + " axis: " + atom.str() + " " + what);
    };
    switch (atom.tag) {
        case ATag::zero:
        case ATag::constant:
        case ATag::monomial:
            return;
        case ATag::exp_small:
            if (axis_kind == Kind1D::first) {
                if (!(atom.a < freq)) fail("requires frequency > a for the E_q kernel");
            } else {
                if (atom.a > 0) fail("grows against the e_q kernel (requires a <= 0)");
            }
            return;
        case ATag::exp_big:
            if (axis_kind == Kind1D::second) {
                if (!(atom.a < ctx.q * freq)) fail("requires frequency > a/q for the e_q kernel");
            }
            return;
        case ATag::trig:
            if (trig_is_big(atom.trig)) {
                if (axis_kind == Kind1D::second && !(std::fabs(atom.a) < ctx.q * freq))
                    fail("requires frequency > |a|/q for the e_q kernel");
            } else {
                if (axis_kind == Kind1D::first) {
                    if (!(std::fabs(atom.a) < freq)) fail("requires frequency > |a| for the E_q kernel");
                } else {
                    if (atom.a != 0.0) fail("series domain does not cover the unbounded e_q-kernel lattice");
                }
            }
            return;
    }
}

// ---- parsing ----------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

TrigKind parse_trig_selector(const std::string& sel, const std::string& family) {
    bool big;
    if (family == "small")
        big = false;
    else if (family == "big")
        big = true;
    else
        throw parse_error("unknown trig family '" + family + "' (expected small|big)");
    if (sel == "cos") return big ? TrigKind::cos_big : TrigKind::cos_small;
    if (sel == "sin") return big ? TrigKind::sin_big : TrigKind::sin_small;
    if (sel == "cosh") return big ? TrigKind::cosh_big : TrigKind::cosh_small;
    if (sel == "sinh") return big ? TrigKind::sinh_big : TrigKind::sinh_small;
    throw parse_error("unknown trig selector '" + sel + "' (expected cos|sin|cosh|sinh)");
}

TrigKind parse_trig_full(const std::string& name) {
    for (TrigKind t : {TrigKind::cos_small, TrigKind::sin_small, TrigKind::cos_big, TrigKind::sin_big,
                       TrigKind::cosh_small, TrigKind::sinh_small, TrigKind::cosh_big, TrigKind::sinh_big})
        if (name == to_string(t)) return t;
    throw parse_error("unknown trig kind '" + name + "'");
}

AdditionKind parse_add_kind(const std::string& name) {
    if (name == "ward") return AdditionKind::ward_add;
    if (name == "coadd") return AdditionKind::coadd;
    if (name == "qpow") return AdditionKind::qpow_add;
    throw parse_error("unknown q-addition kind '" + name + "' (expected ward|coadd|qpow)");
}

ExpFamily parse_family(const std::string& name) {
    if (name == "small") return ExpFamily::small;
    if (name == "big") return ExpFamily::big;
    throw parse_error("unknown exponential family '" + name + "' (expected small|big)");
}

template <class S>
S parse_scalar(const std::string& text) {
    return scalar_traits<S>::from_rational(parse_rational(text));
}

} // namespace

template <class S>
Atom1D<S> parse_atom1d(const std::string& text) {
    if (text == "zero" || text == "0") return Atom1D<S>::zero();
    if (text == "const" || text == "1") return Atom1D<S>::constant();
    auto colon = text.find(':');
    if (colon == std::string::npos) throw parse_error("cannot parse 1-D atom '" + text + "'");
    std::string head = text.substr(0, colon), rest = text.substr(colon + 1);
    if (head == "mono") return Atom1D<S>::monomial(parse_rational(rest));
    if (head == "eq") return Atom1D<S>::exp_small(parse_scalar<S>(rest));
    if (head == "Eq") return Atom1D<S>::exp_big(parse_scalar<S>(rest));
    if (head == "trig") {
        auto parts = split(rest, ',');
        if (parts.size() != 2) throw parse_error("trig atom expects trig:<kind>,<a>");
        return Atom1D<S>::trig_atom(parse_trig_full(parts[0]), parse_scalar<S>(parts[1]));
    }
    throw parse_error("cannot parse 1-D atom '" + text + "'");
}

template <class S>
Descriptor<S> parse_descriptor(const std::string& text) {
    if (text == "zero" || text == "0") return Descriptor<S>::zero();
    auto colon = text.find(':');
    if (colon == std::string::npos) throw parse_error("cannot parse descriptor '" + text + "'");
    std::string head = text.substr(0, colon), rest = text.substr(colon + 1);
    if (head == "mono") {
        auto p = split(rest, ',');
        if (p.size() != 2) throw parse_error("mono expects mono:<ax>,<ay>");
        return Descriptor<S>::monomial(parse_rational(p[0]), parse_rational(p[1]));
    }
    if (head == "qaddpow") {
        auto p = split(rest, ',');
        if (p.size() != 4) throw parse_error("qaddpow expects qaddpow:<a>,<b>,<n>,<kind>");
        long n = 0;
        try {
            n = std::stol(p[2]);
        } catch (const std::exception&) {
            throw parse_error("qaddpow: bad power '" + p[2] + "'");
        }
        return Descriptor<S>::qadd_power(parse_scalar<S>(p[0]), parse_scalar<S>(p[1]), n, parse_add_kind(p[3]));
    }
    if (head == "expqadd") {
        auto p = split(rest, ',');
        if (p.size() != 3) throw parse_error("expqadd expects expqadd:<a>,<b>,<family>");
        return Descriptor<S>::exp_qadd(parse_scalar<S>(p[0]), parse_scalar<S>(p[1]), parse_family(p[2]));
    }
    if (head == "trig") {
        auto p = split(rest, ',');
        if (p.size() != 4) throw parse_error("trig expects trig:<sel>,<a>,<b>,<family>");
        return Descriptor<S>::trig_qadd(parse_scalar<S>(p[1]), parse_scalar<S>(p[2]),
                                        parse_trig_selector(p[0], p[3]));
    }
    if (head == "series") {
        // series:<c0;c1;...>,<alpha>,<beta>,<family>
        auto p = split(rest, ',');
        if (p.size() != 4) throw parse_error("series expects series:<c0;c1;..>,<alpha>,<beta>,<family>");
        std::vector<S> cs;
        for (auto& c : split(p[0], ';')) cs.push_back(parse_scalar<S>(c));
        return Descriptor<S>::series_qadd(std::move(cs), parse_scalar<S>(p[1]), parse_scalar<S>(p[2]),
                                          parse_family(p[3]));
    }
    if (head == "sep") {
        auto p = split(rest, '|');
        if (p.size() != 2) throw parse_error("sep expects sep:<atom>|<atom>");
        return Descriptor<S>::separable(parse_atom1d<S>(p[0]), parse_atom1d<S>(p[1]));
    }
    if (head == "lin") {
        std::vector<S> coefs;
        std::vector<Descriptor<S>> parts;
        for (auto& term : split(rest, '+')) {
            auto star = term.find('*');
            if (star == std::string::npos) throw parse_error("lin term '" + term + "' expects <coef>*<descriptor>");
            coefs.push_back(parse_scalar<S>(term.substr(0, star)));
            parts.push_back(parse_descriptor<S>(term.substr(star + 1)));
        }
        return Descriptor<S>::linear_combo(std::move(coefs), std::move(parts));
    }
    throw parse_error("cannot parse descriptor '" + text + "'");
}

template Descriptor<double> parse_descriptor<double>(const std::string&);
template Descriptor<Rational> parse_descriptor<Rational>(const std::string&);
template Atom1D<double> parse_atom1d<double>(const std::string&);
template Atom1D<Rational> parse_atom1d<Rational>(const std::string&);

} // namespace qlt
