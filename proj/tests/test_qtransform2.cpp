#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlt/qtransform2.hpp"

using namespace qlt;
using D = Descriptor<double>;
using DR = Descriptor<Rational>;
using A = Atom1D<double>;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-30}); }
} // namespace

TEST_CASE("worked examples of the first kind") {
    FloatContext ctx(0.5);
    CHECK(rel(qlap2d_numeric(D::monomial(Rational(0), Rational(0)), 2.0, 3.0, TransformKind::k1, ctx), 1.0 / 6.0) <
          1e-12);
    CHECK(rel(qlap2d_numeric(D::monomial(Rational(1), Rational(1)), 1.0, 1.0, TransformKind::k1, ctx), 1.0) <
          1e-11);
    D combo = D::linear_combo({1.0, 4.0}, {D::monomial(Rational(0), Rational(0)), D::monomial(Rational(1), Rational(1))});
    CHECK(rel(qlap2d_numeric(combo, 1.0, 1.0, TransformKind::k1, ctx), 5.0) < 1e-11);
}

TEST_CASE("catalog closed forms, exact") {
    ExactContext ctx(Rational(1, 2));
    Rational r(2), s(3);

    // monomials: [n]_q! [m]_q! / (r^{n+1} s^{m+1})
    RSExpr<Rational> mono = qlap2d_catalog<Rational>(DR::monomial(Rational(2), Rational(1)), TransformKind::k1, ctx);
    Rational expect = q_factorial<Rational>(2, ctx) * q_factorial<Rational>(1, ctx) /
                      (pow_int<Rational>(r, 3) * pow_int<Rational>(s, 2));
    CHECK(mono.eval(r, s) == expect);

    // (1x (+)_q 1y)^1 at (2,1): 1/(r^2 s) + 1/(r s^2) = 3/4
    RSExpr<Rational> qp =
        qlap2d_catalog<Rational>(DR::qadd_power(Rational(1), Rational(1), 1, AdditionKind::ward_add),
                                 TransformKind::k1, ctx);
    CHECK(qp.eval(Rational(2), Rational(1)) == Rational(3, 4));

    // e_q(0 (+) 0) = 1 -> 1/(rs)
    RSExpr<Rational> e0 =
        qlap2d_catalog<Rational>(DR::exp_qadd(Rational(0), Rational(0), ExpFamily::small), TransformKind::k1, ctx);
    CHECK(e0.eval(r, s) == Rational(1, 6));

    // second kind coadd power carries q^{-C(n+1,2)}
    RSExpr<Rational> cp =
        qlap2d_catalog<Rational>(DR::qadd_power(Rational(1), Rational(1), 2, AdditionKind::coadd),
                                 TransformKind::k2, ctx);
    Rational direct(0);
    // q^{-3} [2]_q! sum_k r^{-(k+1)} s^{-(2-k+1)}
    for (long k = 0; k <= 2; ++k)
        direct += ctx.qpow(-3) * q_factorial<Rational>(2, ctx) /
                  (pow_int<Rational>(r, k + 1) * pow_int<Rational>(s, 2 - k + 1));
    CHECK(cp.eval(r, s) == direct);

    // big exponential image q^2/((qr-a)(qs-b))
    Rational a(1, 8), b(1, 16);
    RSExpr<Rational> Eq = qlap2d_catalog<Rational>(DR::exp_qadd(a, b, ExpFamily::big), TransformKind::k2, ctx);
    Rational q = ctx.q;
    CHECK(Eq.eval(r, s) == q * q / ((q * r - a) * (q * s - b)));

    // mixed-kernel images via separable atoms
    RSExpr<Rational> k3 = qlap2d_catalog<Rational>(
        DR::separable(Atom1D<Rational>::exp_big(a), Atom1D<Rational>::exp_small(b)), TransformKind::k3, ctx);
    CHECK(k3.eval(r, s) == q / ((q * r - a) * (s - b)));
    RSExpr<Rational> k4 = qlap2d_catalog<Rational>(
        DR::separable(Atom1D<Rational>::exp_small(a), Atom1D<Rational>::exp_big(b)), TransformKind::k4, ctx);
    CHECK(k4.eval(r, s) == q / ((r - a) * (q * s - b)));

    // trig images, first kind
    RSExpr<Rational> cos1 = qlap2d_catalog<Rational>(DR::trig_qadd(a, b, TrigKind::cos_small), TransformKind::k1, ctx);
    CHECK(cos1.eval(r, s) == (r * s - a * b) / ((r * r + a * a) * (s * s + b * b)));
    RSExpr<Rational> sinh1 =
        qlap2d_catalog<Rational>(DR::trig_qadd(a, b, TrigKind::sinh_small), TransformKind::k1, ctx);
    CHECK(sinh1.eval(r, s) == (a * s + b * r) / ((r * r - a * a) * (s * s - b * b)));

    // catalog misses for unsupported pairings
    CHECK_THROWS_AS(qlap2d_catalog<Rational>(DR::exp_qadd(a, b, ExpFamily::big), TransformKind::k1, ctx),
                    catalog_miss);
    CHECK_THROWS_AS(
        qlap2d_catalog<Rational>(DR::qadd_power(a, b, 2, AdditionKind::ward_add), TransformKind::k3, ctx),
        catalog_miss);
}

TEST_CASE("catalog closed forms against their rational expressions") {
    ExactContext ctx(R(1, 2));
    Rational rr(5, 2), ss(7, 2);
    R r(5, 2), s(7, 2), q = ctx.q, a(1, 4), b(1, 8);

    // second-kind trig family
    auto evalK2 = [&](TrigKind t) {
        return qlap2d_catalog<Rational>(DR::trig_qadd(a, b, t), TransformKind::k2, ctx).eval(r, s);
    };
    R qr = q * r, qs = q * s;
    CHECK(evalK2(TrigKind::cos_big) == q * q * (q * q * r * s - a * b) / ((qr * qr + a * a) * (qs * qs + b * b)));
    CHECK(evalK2(TrigKind::sin_big) == q * q * q * (a * s + b * r) / ((qr * qr + a * a) * (qs * qs + b * b)));
    CHECK(evalK2(TrigKind::cosh_big) == q * q * (q * q * r * s + a * b) / ((qr * qr - a * a) * (qs * qs - b * b)));
    CHECK(evalK2(TrigKind::sinh_big) == q * q * q * (a * s + b * r) / ((qr * qr - a * a) * (qs * qs - b * b)));

    // first-kind trig family
    auto evalK1 = [&](TrigKind t) {
        return qlap2d_catalog<Rational>(DR::trig_qadd(a, b, t), TransformKind::k1, ctx).eval(r, s);
    };
    CHECK(evalK1(TrigKind::sin_small) == (a * s + b * r) / ((r * r + a * a) * (s * s + b * b)));
    CHECK(evalK1(TrigKind::cosh_small) == (r * s + a * b) / ((r * r - a * a) * (s * s - b * b)));

    // ward power: [n]_q!/(br-as) ((b/s)^{n+1} - (a/r)^{n+1})
    for (long n = 1; n <= 3; ++n) {
        R img = qlap2d_catalog<Rational>(DR::qadd_power(a, b, n, AdditionKind::ward_add), TransformKind::k1, ctx)
                    .eval(r, s);
        R expect = q_factorial<Rational>(n, ctx) / (b * r - a * s) *
                   (pow_int<Rational>(b / s, n + 1) - pow_int<Rational>(a / r, n + 1));
        CHECK(img == expect);
    }
    // coadd power carries q^{-C(n+1,2)}
    for (long n = 1; n <= 3; ++n) {
        R img = qlap2d_catalog<Rational>(DR::qadd_power(a, b, n, AdditionKind::coadd), TransformKind::k2, ctx)
                    .eval(r, s);
        R expect = ctx.qpow(-binom2(n + 1)) * q_factorial<Rational>(n, ctx) / (b * r - a * s) *
                   (pow_int<Rational>(b / s, n + 1) - pow_int<Rational>(a / r, n + 1));
        CHECK(img == expect);
    }
    // q-power basis, third kind: [n]_q! q^{-C(n+1,2)}/(as - brq^n) ((a/r)^{n+1} - (bq^n/s)^{n+1})
    for (long n = 1; n <= 3; ++n) {
        R img = qlap2d_catalog<Rational>(DR::qadd_power(a, b, n, AdditionKind::qpow_add), TransformKind::k3, ctx)
                    .eval(r, s);
        R qn = ctx.qpow(n);
        R expect = q_factorial<Rational>(n, ctx) * ctx.qpow(-binom2(n + 1)) / (a * s - b * r * qn) *
                   (pow_int<Rational>(a / r, n + 1) - pow_int<Rational>(b * qn / s, n + 1));
        CHECK(img == expect);
    }
    // q-power basis, fourth kind: [n]_q! q^{-n}/(br - qas) ((b/s)^{n+1} - (qa/r)^{n+1})
    for (long n = 1; n <= 3; ++n) {
        R img = qlap2d_catalog<Rational>(DR::qadd_power(a, b, n, AdditionKind::qpow_add), TransformKind::k4, ctx)
                    .eval(r, s);
        R expect = q_factorial<Rational>(n, ctx) * ctx.qpow(-n) / (b * r - q * a * s) *
                   (pow_int<Rational>(b / s, n + 1) - pow_int<Rational>(q * a / r, n + 1));
        CHECK(img == expect);
    }
    // series with finite coefficients: (L[f](r/alpha) - L[f](s/beta))/(alpha s - beta r)
    {
        std::vector<R> cs{R(1), R(2), R(0), R(3)};
        R alpha(1, 2), beta(2);
        R img = qlap2d_catalog<Rational>(DR::series_qadd(cs, alpha, beta, ExpFamily::small), TransformKind::k1, ctx)
                    .eval(r, s);
        auto L = [&](const R& u) {
            R acc(0);
            for (std::size_t n = 0; n < cs.size(); ++n) acc += cs[n] * pow_int<Rational>(u, -(long)n - 1);
            return acc;
        };
        CHECK(img == (L(r / alpha) - L(s / beta)) / (alpha * s - beta * r));

        R img2 = qlap2d_catalog<Rational>(DR::series_qadd(cs, alpha, beta, ExpFamily::big), TransformKind::k2, ctx)
                     .eval(r, s);
        auto L2 = [&](const R& u) {
            R acc(0);
            for (std::size_t n = 0; n < cs.size(); ++n)
                acc += cs[n] * ctx.qpow(-(long)n) * pow_int<Rational>(u, -(long)n - 1);
            return acc;
        };
        CHECK(img2 == (L2(r / alpha) - L2(s / beta)) / (alpha * s - beta * r));
    }
}

TEST_CASE("third/fourth kind q-power images against separable expansion") {
    // oracle: expand (a x (+) b y)_q^n monomial-wise and transform each term
    ExactContext ctx(Rational(2, 3));
    Rational a(1, 2), b(1, 3), r(2), s(3);
    for (TransformKind kind : {TransformKind::k3, TransformKind::k4}) {
        for (long n = 0; n <= 3; ++n) {
            RSExpr<Rational> img =
                qlap2d_catalog<Rational>(DR::qadd_power(a, b, n, AdditionKind::qpow_add), kind, ctx);
            QPoly2<Rational> poly = expand_q_addition<Rational>(AdditionKind::qpow_add, n, ctx).scale_args(a, b);
            Rational direct(0);
            for (auto& [key, c] : poly.terms()) {
                RSExpr<Rational> term = qlap2d_catalog<Rational>(
                    DR::monomial(Rational(key.first), Rational(key.second)), kind, ctx);
                direct += c * term.eval(r, s);
            }
            CHECK(img.eval(r, s) == direct);
        }
    }
}

TEST_CASE("linearity and separable factorization") {
    FloatContext ctx(0.5);
    D f = D::monomial(Rational(2), Rational(1));
    D g = D::exp_qadd(0.2, -0.3, ExpFamily::small);
    double r = 1.2, s = 0.9;
    for (TransformKind kind : {TransformKind::k1, TransformKind::k2}) {
        if (kind == TransformKind::k2) g = D::exp_qadd(0.1, -0.2, ExpFamily::big);
        double lhs = qlap2d_numeric(D::linear_combo({2.0, -3.0}, {f, g}), r, s, kind, ctx);
        double rhs = 2.0 * qlap2d_numeric(f, r, s, kind, ctx) - 3.0 * qlap2d_numeric(g, r, s, kind, ctx);
        CHECK(rel(lhs, rhs) < 1e-10);
    }

    for (TransformKind kind :
         {TransformKind::k1, TransformKind::k2, TransformKind::k3, TransformKind::k4}) {
        D sep = D::separable(A::monomial(Rational(2)), A::exp_big(0.05));
        double both = qlap2d_numeric(sep, r, s, kind, ctx);
        double fx = qlap1d_numeric(A::monomial(Rational(2)), r, axis_kind_x(kind), ctx);
        double fy = qlap1d_numeric(A::exp_big(0.05), s, axis_kind_y(kind), ctx);
        CHECK(rel(both, fx * fy) < 1e-10);
    }
}

TEST_CASE("scaling theorem") {
    FloatContext fctx(0.5);
    QContext<double> ctx(0.5);
    // numeric transform of f(ax, by) equals (1/(ab)) T{f}(r/a, s/b)
    for (double a : {0.5, 2.0})
        for (double b : {0.5, 2.0}) {
            D f = D::monomial(Rational(1), Rational(1));
            // f(ax, by) = a b x y
            D scaled = D::linear_combo({a * b}, {f});
            double r = 1.5, s = 1.0;
            double lhs = qlap2d_numeric(scaled, r, s, TransformKind::k1, fctx);
            double rhs = scaling_image<double>(f, a, b, TransformKind::k1, ctx).eval(r, s);
            CHECK(rel(lhs, rhs) < 1e-9);
        }
    // identity scaling returns the catalog entry
    D f = D::monomial(Rational(1), Rational(1));
    CHECK(rel(scaling_image<double>(f, 1.0, 1.0, TransformKind::k1, ctx).eval(2.0, 3.0),
              qlap2d_catalog<double>(f, TransformKind::k1, ctx).eval(2.0, 3.0)) < 1e-14);
    // constants are fixed points of scaling
    D one = D::monomial(Rational(0), Rational(0));
    CHECK(rel(scaling_image<double>(one, 2.0, 2.0, TransformKind::k1, ctx).eval(2.0, 3.0), 1.0 / 6.0) < 1e-14);
}

TEST_CASE("derivative image assembly examples") {
    ExactContext ctx(Rational(1, 2));
    // constant: image of df/dx is r (1/(rs)) - 1/s = 0
    RSExpr<Rational> F = qlap2d_catalog<Rational>(DR::monomial(Rational(0), Rational(0)), TransformKind::k1, ctx);
    BoundaryData<Rational> bd;
    bd.x0_traces = {SExpr<Rational>::power_atom(Rational(1), Rational(-1))};
    bd.y0_traces = {SExpr<Rational>::power_atom(Rational(1), Rational(-1))};
    bd.corner = Rational(1);
    RSExpr<Rational> img = derivative_image<Rational>(TransformKind::k1, DerivativeSpec::dx(), F, bd, ctx);
    CHECK(normalize(img).is_zero());

    // f = x y: image of d^2 f/(dx dy) = image of 1
    RSExpr<Rational> Fxy = qlap2d_catalog<Rational>(DR::monomial(Rational(1), Rational(1)), TransformKind::k1, ctx);
    BoundaryData<Rational> bd2;
    bd2.x0_traces = {SExpr<Rational>::zero()};
    bd2.y0_traces = {SExpr<Rational>::zero()};
    bd2.corner = Rational(0);
    RSExpr<Rational> img2 = derivative_image<Rational>(TransformKind::k1, DerivativeSpec::dxdy(), Fxy, bd2, ctx);
    CHECK(img2.eval(Rational(1), Rational(1)) == Rational(1));

    // missing trace raises incomplete-data
    BoundaryData<Rational> empty;
    CHECK_THROWS_AS(derivative_image<Rational>(TransformKind::k1, DerivativeSpec::dx(), F, empty, ctx),
                    incomplete_data_error);
}

TEST_CASE("multiplication image examples") {
    FloatContext ctx(0.5);
    QContext<double> cctx(0.5);

    // m = n = 0 returns F unchanged
    auto F1 = [](double r, double s) { return 1.0 / (r * s); };
    auto id = multiplication_image(TransformKind::k1, 0, 0, F1, ctx);
    CHECK(id(1.5, 2.0) == doctest::Approx(F1(1.5, 2.0)));

    // f = 1, m = 1: equals the image of x under each kind
    auto im1 = multiplication_image(TransformKind::k1, 1, 0, F1, ctx);
    CHECK(rel(im1(1.0, 1.0), 1.0) < 1e-9); // [1]_q!/(r^2 s) = 1 at (1,1)

    auto im2 = multiplication_image(TransformKind::k2, 1, 0, F1, ctx);
    double gamma2 = axis_gamma<double>(Kind1D::second, Rational(2), cctx);
    CHECK(rel(im2(1.0, 1.0), gamma2) < 1e-9); // gamma_q(2)/(r^2 s) = 2 at (1,1)
}

TEST_CASE("hyperbolic addition formulas, exact coefficients") {
    for (Rational qv : {Rational(1, 2), Rational(2, 3)}) {
        ExactContext ctx(qv);
        const int N = 12;
        std::vector<Rational> cosh_c(N + 1, Rational(0)), sinh_c(N + 1, Rational(0));
        for (int n = 0; n <= N; ++n) (n % 2 ? sinh_c : cosh_c)[n] = Rational(1);
        QPoly2<Rational> ch = series_q_compose<Rational>(cosh_c, AdditionKind::ward_add, Rational(1), Rational(1), ctx);
        QPoly2<Rational> sh = series_q_compose<Rational>(sinh_c, AdditionKind::ward_add, Rational(1), Rational(1), ctx);
        QPoly2<Rational> cx, sx, cy, sy;
        for (int n = 0; n <= N; ++n) {
            Rational w = Rational(1) / q_factorial<Rational>(n, ctx);
            if (n % 2) {
                sx.add_term(n, 0, w);
                sy.add_term(0, n, w);
            } else {
                cx.add_term(n, 0, w);
                cy.add_term(0, n, w);
            }
        }
        CHECK(ch == (cx * cy + sx * sy).truncate_total_degree(N));
        CHECK(sh == (cx * sy + sx * cy).truncate_total_degree(N));
    }
}

TEST_CASE("series consistency with the exponential image") {
    FloatContext ctx(0.5);
    QContext<double> cctx(0.5);
    // all-ones coefficients reproduce the e_q(x (+) y) image on the common
    // region; the truncation tail at u = 1.6 forces a long coefficient list
    std::vector<double> ones(61, 1.0);
    RSExpr<double> series = qlap2d_catalog<double>(D::series_qadd(ones, 1.0, 1.0, ExpFamily::small),
                                                   TransformKind::k1, cctx);
    RSExpr<double> expimg = qlap2d_catalog<double>(D::exp_qadd(1.0, 1.0, ExpFamily::small), TransformKind::k1, cctx);
    for (double r : {1.6, 2.0})
        for (double s : {1.7, 2.5}) CHECK(rel(series.eval(r, s), expimg.eval(r, s)) < 1e-8);
}

TEST_CASE("axis attribution of divergence") {
    FloatContext ctx(0.5);
    // out-of-region frequency on the y axis only
    D f = D::exp_qadd(0.2, 1.5, ExpFamily::small);
    CHECK_THROWS_WITH_AS(qlap2d_numeric(f, 1.0, 1.0, TransformKind::k1, ctx), doctest::Contains("y axis"),
                         divergence_error);
}
