#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlt/qtransform.hpp"

using namespace qlt;
using A = Atom1D<double>;
using AR = Atom1D<Rational>;

TEST_CASE("first-kind numeric values") {
    FloatContext ctx(0.5);
    for (double s : {0.7, 1.0, 3.0})
        CHECK(qlap1d_numeric([](double) { return 1.0; }, s, Kind1D::first, ctx) ==
              doctest::Approx(1.0 / s).epsilon(1e-12));

    // t^3 at s = 2: [3]_q!/s^4
    double expect = to_double(q_factorial<Rational>(3, ExactContext(Rational(1, 2)))) / 16.0;
    CHECK(qlap1d_numeric([](double t) { return t * t * t; }, 2.0, Kind1D::first, ctx) ==
          doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("second-kind numeric values") {
    FloatContext ctx(0.5);
    // E_q(a t) with a = 0 reduces to the constant; image 1/s
    CHECK(qlap1d_numeric(A::exp_big(0.0), 1.0, Kind1D::second, ctx) == doctest::Approx(1.0).epsilon(1e-12));
    // gamma_q(n+1)/s^{n+1} for integer monomials
    QContext<double> c(0.5);
    for (int n = 0; n <= 3; ++n) {
        double g = axis_gamma<double>(Kind1D::second, Rational(n + 1), c);
        CHECK(qlap1d_numeric(A::monomial(Rational(n)), 2.0, Kind1D::second, ctx) ==
              doctest::Approx(g / std::pow(2.0, n + 1)).epsilon(1e-10));
    }
}

TEST_CASE("catalog closed forms") {
    ExactContext ctx(Rational(1, 2));
    // constant -> 1/s
    SExpr<Rational> one = qlap1d_catalog<Rational>(AR::constant(), Kind1D::first, ctx);
    CHECK(one.eval(Rational(2)) == Rational(1, 2));
    // monomial n -> [n]_q!/s^{n+1}
    SExpr<Rational> m3 = qlap1d_catalog<Rational>(AR::monomial(Rational(3)), Kind1D::first, ctx);
    CHECK(m3.eval(Rational(2)) == Rational(21, 8) / Rational(16));
    // exp_big under second kind -> q/(q s - a)
    SExpr<Rational> eb = qlap1d_catalog<Rational>(AR::exp_big(Rational(1, 4)), Kind1D::second, ctx);
    CHECK(eb.eval(Rational(2)) == Rational(1, 2) / (Rational(1) - Rational(1, 4)));
    // pairing misses
    CHECK_THROWS_AS(qlap1d_catalog<Rational>(AR::exp_big(Rational(1)), Kind1D::first, ctx), catalog_miss);
    CHECK_THROWS_AS(qlap1d_catalog<Rational>(AR::exp_small(Rational(1)), Kind1D::second, ctx), catalog_miss);
    CHECK_THROWS_AS(
        qlap1d_catalog<Rational>(AR::trig_atom(TrigKind::cos_small, Rational(1)), Kind1D::second, ctx),
        catalog_miss);
}

TEST_CASE("catalog vs numeric on the grid") {
    for (double q : {0.3, 0.5, 0.7}) {
        FloatContext ctx(q);
        QContext<double> cctx(q);
        for (double s : {0.5, 1.0, 2.0, 5.0}) {
            double a = 0.25 * s;
            std::vector<Atom1D<double>> atoms{
                A::constant(),
                A::monomial(Rational(1)),
                A::monomial(Rational(3)),
                A::monomial(Rational(1, 2)),
                A::monomial(Rational(-1, 2)),
                A::exp_small(a),
                A::exp_small(-a),
                A::trig_atom(TrigKind::cos_small, a),
                A::trig_atom(TrigKind::sin_small, a),
                A::trig_atom(TrigKind::cosh_small, a),
                A::trig_atom(TrigKind::sinh_small, a),
            };
            for (auto& atom : atoms) {
                double numeric = qlap1d_numeric(atom, s, Kind1D::first, ctx);
                double closed = qlap1d_catalog<double>(atom, Kind1D::first, cctx).eval(s);
                double scale = std::max({std::fabs(numeric), std::fabs(closed), 1e-30});
                INFO(atom.str(), " s=", s, " q=", q);
                CHECK(std::fabs(numeric - closed) / scale < 1e-9);
            }
            std::vector<Atom1D<double>> atoms2{
                A::constant(),
                A::monomial(Rational(2)),
                A::exp_big(q * a),
                A::trig_atom(TrigKind::cos_big, q * a),
                A::trig_atom(TrigKind::sin_big, q * a),
                A::trig_atom(TrigKind::cosh_big, q * a),
                A::trig_atom(TrigKind::sinh_big, q * a),
            };
            for (auto& atom : atoms2) {
                double numeric = qlap1d_numeric(atom, s, Kind1D::second, ctx);
                double closed = qlap1d_catalog<double>(atom, Kind1D::second, cctx).eval(s);
                double scale = std::max({std::fabs(numeric), std::fabs(closed), 1e-30});
                INFO(atom.str(), " s=", s, " q=", q);
                CHECK(std::fabs(numeric - closed) / scale < 1e-9);
            }
        }
    }
}

TEST_CASE("first-kind derivative image") {
    FloatContext ctx(0.5);
    // transform of D_q f equals s T{f} - f(0) for polynomial f
    auto f = [](double t) { return 1.0 + 2.0 * t + t * t * t; };
    auto df = [&](double t) { return q_derivative(f, t, 1, ctx); };
    for (double s : {1.0, 2.0}) {
        double lhs = qlap1d_numeric(df, s, Kind1D::first, ctx);
        double rhs = s * qlap1d_numeric(f, s, Kind1D::first, ctx) - f(0.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("region enforcement") {
    FloatContext ctx(0.5);
    // e_q(a t) under the first kind requires a < s
    CHECK_THROWS_AS(qlap1d_numeric(A::exp_small(1.5), 1.0, Kind1D::first, ctx), divergence_error);
    CHECK_NOTHROW(qlap1d_numeric(A::exp_small(0.5), 1.0, Kind1D::first, ctx));
    // E_q(a t) under the second kind requires a < q s
    CHECK_THROWS_AS(qlap1d_numeric(A::exp_big(0.9), 1.0, Kind1D::second, ctx), divergence_error);
}

TEST_CASE("naive lattice diverges for the E_q kernel") {
    FloatContext ctx(0.5);
    LatticeSumPlan naive;
    naive.A = 1.0;
    naive.k_min = -100;
    CHECK_THROWS_WITH_AS(qlap1d_numeric([](double) { return 1.0; }, 1.3, Kind1D::first, ctx, naive),
                         doctest::Contains("large-x"), divergence_error);
}
