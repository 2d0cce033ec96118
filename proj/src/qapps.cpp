#include "qlt/qapps.hpp"

#include <cmath>

namespace qlt {

const char* to_string(EquationId id) {
    switch (id) {
        case EquationId::cauchy_ward: return "cauchy_ward";
        case EquationId::cauchy_coadd: return "cauchy_coadd";
        case EquationId::abel_ward: return "abel_ward";
        case EquationId::abel_coadd: return "abel_coadd";
        case EquationId::transport: return "transport";
        case EquationId::telegraph: return "telegraph";
        case EquationId::wave: return "wave";
    }
    return "?";
}

std::optional<EquationId> parse_equation_id(const std::string& name) {
    for (EquationId id : {EquationId::cauchy_ward, EquationId::cauchy_coadd, EquationId::abel_ward,
                          EquationId::abel_coadd, EquationId::transport, EquationId::telegraph, EquationId::wave})
        if (name == to_string(id)) return id;
    return std::nullopt;
}

namespace {

using R = Rational;
using DescR = Descriptor<Rational>;

// residual of a candidate u over the lattice grid (q^i, q^j), i,j = 1..5
double lattice_residual(const LatticeFunction2D& defect, const FloatContext& fctx, long& points) {
    double worst = 0.0;
    points = 0;
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j) {
            double x = std::pow(fctx.q, i), t = std::pow(fctx.q, j);
            worst = std::max(worst, std::fabs(defect(x, t)));
            ++points;
        }
    return worst;
}

// coefficient-wise residual of f(x (+) y) - rhs in exact arithmetic
bool functional_residual_is_zero(EquationId id, const Rational& k, const ExactContext& ctx, long& checked) {
    const int N = 12;
    std::vector<R> a(N + 1, R(0));
    bool ward = (id == EquationId::cauchy_ward || id == EquationId::abel_ward);
    AdditionKind kind = ward ? AdditionKind::ward_add : AdditionKind::coadd;
    QPoly2<R> rhs;
    if (id == EquationId::cauchy_ward) {
        a[1] = k;
        rhs.add_term(1, 0, k);
        rhs.add_term(0, 1, k);
    } else if (id == EquationId::cauchy_coadd) {
        a[1] = k * ctx.q;
        rhs.add_term(1, 0, k * ctx.q);
        rhs.add_term(0, 1, k * ctx.q);
    } else {
        // abel: f = e_q(-kx) resp. E_q(-qkx); rhs is the product of the
        // univariate truncations
        QPoly2<R> fx, fy;
        for (int n = 0; n <= N; ++n) {
            R an = ward ? pow_int<R>(-k, n) : pow_int<R>(-ctx.q * k, n);
            a[static_cast<std::size_t>(n)] = an;
            R w = an / q_factorial<R>(n, ctx);
            if (!ward) w = w * ctx.qpow(binom2(n));
            fx.add_term(n, 0, w);
            fy.add_term(0, n, w);
        }
        rhs = (fx * fy).truncate_total_degree(N);
    }
    QPoly2<R> lhs = series_q_compose<R>(a, kind, R(1), R(1), ctx);
    QPoly2<R> diff = lhs - rhs;
    checked = (N + 1) * (N + 2) / 2;
    return diff.is_zero();
}

std::string one_d_form(const std::vector<Inverse1DTerm<R>>& terms, const std::string& var) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s += " + ";
        std::string c = to_string(terms[i].coef);
        std::string body = terms[i].atom.str();
        // atoms print with parameter t; swap in the requested variable
        for (std::size_t pos = 0; (pos = body.find('t', pos)) != std::string::npos; ++pos) body[pos] = var[0];
        s += (c == "1" ? "" : c + "*") + body;
    }
    return s;
}

} // namespace

SolutionReport solve_functional(EquationId id, const ExactContext& ctx, const Rational& k) {
    bool ward = (id == EquationId::cauchy_ward || id == EquationId::abel_ward);
    bool cauchy = (id == EquationId::cauchy_ward || id == EquationId::cauchy_coadd);
    if (id == EquationId::transport || id == EquationId::telegraph || id == EquationId::wave)
        throw domain_error("solve_functional: not a functional-equation id");
    Kind1D axis = ward ? Kind1D::first : Kind1D::second;

    // separated 1-D transform of the unknown
    SExpr<R> L;
    if (cauchy) {
        L = SExpr<R>::power_atom(k, Rational(-2)); // k / r^2
    } else {
        SAtom<R> a;
        a.coef = R(1);
        a.part.lin.push_back({R(1), -k}); // 1 / (r + k)
        L.atoms.push_back(a);
    }

    // replay the separation identity: transform of the composed side equals
    // the transform of the right-hand side, exactly
    RSExpr<R> lhs = divide_by_sloped(embed(L, Axis::r) - embed(L, Axis::s), R(1)); // (L(r)-L(s))/(s-r)
    RSExpr<R> rhs;
    if (cauchy)
        rhs = embed(L, Axis::r).mul_spow(-1) + embed(L, Axis::s).mul_rpow(-1);
    else
        rhs = tensor(L, L);
    if (!normalize(lhs - rhs).is_zero())
        throw error("solve_functional: separated transform identity failed to verify");

    SolutionReport rep;
    rep.id = id;
    rep.transform_domain = embed(L, Axis::r);
    rep.solution_1d = inverse_catalog_1d<R>(L, axis, ctx);
    rep.inversion_complete = true;
    long checked = 0;
    if (!functional_residual_is_zero(id, k, ctx, checked))
        throw error("solve_functional: coefficient residual is not zero");
    rep.residual_exact = true;
    rep.residual_max = 0.0;
    rep.lattice_points_checked = checked;
    rep.form = "f(x) = " + one_d_form(rep.solution_1d, "x");
    return rep;
}

SolutionReport solve_transport(const Rational& c, const Atom1D<Rational>& f, const Atom1D<Rational>& g,
                               const ExactContext& ctx) {
    if (c == R(0)) throw domain_error("solve_transport: requires c != 0");
    SolutionReport rep;
    rep.id = EquationId::transport;

    SExpr<R> A = qlap1d_catalog<R>(f, Kind1D::first, ctx); // transform of f in r
    SExpr<R> B = qlap1d_catalog<R>(g, Kind1D::first, ctx); // transform of g in s
    RSExpr<R> numerator = embed(B, Axis::s) * c + embed(A, Axis::r);
    rep.transform_domain = normalize(divide_by_sloped(numerator, -c));

    FloatContext fctx = to_float(ctx);
    try {
        DescR u = inverse_catalog<R>(rep.transform_domain, TransformKind::k1, ctx);
        rep.has_descriptor = true;
        rep.descriptor = u;
        Descriptor<double> uf = to_float(u);
        auto ufn = descriptor_function(uf, fctx);
        double cf = to_double(c);
        auto defect = [&](double x, double t) {
            double ut = q_partial(ufn, Var::y, {x, t}, 1, fctx);
            double ux = q_partial(ufn, Var::x, {x, t}, 1, fctx);
            return ut + cf * ux;
        };
        rep.residual_max = lattice_residual(defect, fctx, rep.lattice_points_checked);
        if (rep.residual_max > 1e-8)
            throw error("solve_transport: recovered solution fails the residual bound");
        rep.form = "u(x,t) = " + u.str();
    } catch (const no_match_error&) {
        rep.has_descriptor = false;
        rep.inversion_complete = false;
        rep.form = "inversion incomplete; transform domain: " + rep.transform_domain.str();
    }
    return rep;
}

SolutionReport verify_telegraph(double c, double alpha, double beta, const ExactContext& ctx) {
    SolutionReport rep;
    rep.id = EquationId::telegraph;
    FloatContext fctx = to_float(ctx);

    // the closed-form solution u(x,t) = e_q(x (+)_q t), pointwise e_q(x) e_q(t)
    DescR u = DescR::exp_qadd(R(1), R(1), ExpFamily::small);
    rep.has_descriptor = true;
    rep.descriptor = u;
    rep.inversion_complete = true;
    rep.transform_domain = qlap2d_catalog<R>(u, TransformKind::k1, ctx);

    Descriptor<double> uf = to_float(u);
    auto ufn = descriptor_function(uf, fctx);
    double rhs_factor = c * c - (alpha + 1.0) * (beta + 1.0);
    auto defect = [&](double x, double t) {
        double uxx = q_partial(ufn, Var::x, {x, t}, 2, fctx);
        double utt = q_partial(ufn, Var::y, {x, t}, 2, fctx);
        double ut = q_partial(ufn, Var::y, {x, t}, 1, fctx);
        double uval = ufn(x, t);
        double lhs = c * c * uxx - utt - (alpha + beta) * ut - alpha * beta * uval;
        double rhs = rhs_factor * q_exp_small(x, fctx) * q_exp_small(t, fctx);
        return lhs - rhs;
    };
    rep.residual_max = lattice_residual(defect, fctx, rep.lattice_points_checked);

    // two-path transform-domain check at (r,s) = (2,2)
    double numeric = qlap2d_numeric(uf, 2.0, 2.0, TransformKind::k1, fctx);
    double closed = 1.0 / ((2.0 - 1.0) * (2.0 - 1.0));
    rep.transform_check_error = std::fabs(numeric - closed) / std::fabs(closed);
    rep.form = "u(x,t) = e_q(x (+)_q t)";
    return rep;
}

SolutionReport solve_wave(const Rational& c, const Atom1D<Rational>& f, const Atom1D<Rational>& g,
                          const ExactContext& ctx) {
    if (c == R(0)) throw domain_error("solve_wave: requires c != 0");
    SolutionReport rep;
    rep.id = EquationId::wave;

    SExpr<R> F = qlap1d_catalog<R>(f, Kind1D::first, ctx); // in r
    SExpr<R> G = qlap1d_catalog<R>(g, Kind1D::first, ctx); // in r

    // (s F(r) + G(r)) / ((s-cr)(s+cr)) via sloped partial fractions
    RSExpr<R> pf_s = partial_fractions_sloped<R>({R(0), R(1)}, {c, -c}); // s / ((s-cr)(s+cr))
    RSExpr<R> pf_1 = partial_fractions_sloped<R>({R(1)}, {c, -c});      // 1 / ((s-cr)(s+cr))
    RSExpr<R> T;
    auto multiply_in = [&](const SExpr<R>& data, const RSExpr<R>& pf) {
        for (auto& da : data.atoms)
            for (auto& pa : pf.atoms) {
                RSAtom<R> atom = pa;
                atom.coef = atom.coef * da.coef;
                atom.r.expo += da.part.expo;
                for (auto& lf : da.part.lin) atom.r.lin.push_back(lf);
                for (auto& qf : da.part.quad) atom.r.quad.push_back(qf);
                T.atoms.push_back(std::move(atom));
            }
    };
    multiply_in(F, pf_s);
    multiply_in(G, pf_1);
    rep.transform_domain = normalize(T);

    FloatContext fctx = to_float(ctx);
    try {
        DescR u = inverse_catalog<R>(rep.transform_domain, TransformKind::k1, ctx);
        rep.has_descriptor = true;
        rep.descriptor = u;
        Descriptor<double> uf = to_float(u);
        auto ufn = descriptor_function(uf, fctx);
        double cf = to_double(c);
        auto defect = [&](double x, double t) {
            double utt = q_partial(ufn, Var::y, {x, t}, 2, fctx);
            double uxx = q_partial(ufn, Var::x, {x, t}, 2, fctx);
            return utt - cf * cf * uxx;
        };
        rep.residual_max = lattice_residual(defect, fctx, rep.lattice_points_checked);
        if (rep.residual_max > 1e-8) throw error("solve_wave: recovered solution fails the residual bound");
        rep.form = "u(x,t) = " + u.str();
    } catch (const no_match_error&) {
        rep.has_descriptor = false;
        rep.inversion_complete = false;
        rep.form = "inversion incomplete; transform domain: " + rep.transform_domain.str();
    }
    return rep;
}

} // namespace qlt
