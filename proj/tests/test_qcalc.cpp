#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qlt/qcalc.hpp"
#include "qlt/qcore.hpp"
#include "qlt/qspecial.hpp"

using namespace qlt;

TEST_CASE("q_derivative on polynomials and exponentials") {
    FloatContext ctx(0.5);
    auto sq = [](double x) { return x * x; };
    for (double x : {0.2, 1.0, 3.5})
        CHECK(q_derivative(sq, x, 1, ctx) == doctest::Approx((1 + ctx.q) * x).epsilon(1e-14));
    CHECK(q_derivative([](double) { return 7.0; }, 2.0, 1, ctx) == 0.0);

    auto f = [&](double x) { return q_exp_small(2 * x, ctx); };
    CHECK(q_derivative(f, 0.25, 1, ctx) == doctest::Approx(2 * q_exp_small(0.5, ctx)).epsilon(1e-10));

    // derivative rules of both exponentials at 20 lattice points; the ladder
    // ratio stays mild so the difference quotient keeps 1e-10 headroom over
    // double rounding
    FloatContext lad(0.8, 1e-15);
    for (int k = 1; k <= 20; ++k) {
        double x = std::pow(lad.q, k);
        double lam = 0.7;
        auto e = [&](double u) { return q_exp_small(lam * u, lad); };
        auto E = [&](double u) { return q_exp_big(lam * u, lad); };
        CHECK(q_derivative(e, x, 1, lad) ==
              doctest::Approx(lam * q_exp_small(lam * x, lad)).epsilon(1e-10));
        CHECK(q_derivative(E, x, 1, lad) ==
              doctest::Approx(lam * q_exp_big(lam * lad.q * x, lad)).epsilon(1e-10));
    }

    // lattice limit at x = 0: D_q x^2 -> 0, D_q^2 x^2 -> [2]_q!
    CHECK(q_derivative(sq, 0.0, 1, ctx) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(q_derivative(sq, 0.0, 2, ctx) == doctest::Approx(1 + ctx.q).epsilon(1e-10));
}

TEST_CASE("q_partial") {
    FloatContext ctx(0.5);
    auto xy = [](double x, double y) { return x * y; };
    CHECK(q_partial(xy, Var::x, {2.0, 3.0}, 1, ctx) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(q_partial([](double, double) { return 4.0; }, Var::y, {1.0, 1.0}, 1, ctx) == 0.0);

    auto x2y = [](double x, double y) { return x * x * y; };
    CHECK(q_partial_mixed(x2y, {1.0, 1.0}, 1, 1, ctx) == doctest::Approx(1 + ctx.q).epsilon(1e-13));

    // mixed partials commute
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> dist(0.1, 1.5);
    auto g = [&](double x, double y) { return x * x * y + 3 * x * y * y; };
    for (int i = 0; i < 20; ++i) {
        double x = dist(rng), y = dist(rng);
        double xy_first = q_partial_mixed(g, {x, y}, 1, 1, ctx);
        auto dy_then_dx = [&](double u, double v) {
            auto gy = [&](double w) { return g(u, w); };
            return q_derivative(gy, v, 1, ctx);
        };
        auto outer = [&](double u) { return dy_then_dx(u, y); };
        double yx_first = q_derivative(outer, x, 1, ctx);
        CHECK(xy_first == doctest::Approx(yx_first).epsilon(1e-12));
    }
}

TEST_CASE("jackson_integral_finite") {
    FloatContext ctx(0.5, 1e-15);
    CHECK(jackson_integral_finite([](double) { return 1.0; }, 0.0, 2.5, ctx) ==
          doctest::Approx(2.5).epsilon(1e-13));
    CHECK(jackson_integral_finite([](double x) { return x; }, 1.0, 1.0, ctx) == 0.0);
    CHECK(jackson_integral_finite([](double x) { return x; }, 0.0, 1.0, ctx) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-13)); // 1/[2]_q at q = 1/2
}

TEST_CASE("fundamental theorem and integration by parts") {
    FloatContext ctx(0.5);
    // F(x) = x^3: integral of D_q F over [0, z] telescopes to F(z)
    auto F = [](double x) { return x * x * x; };
    auto dF = [&](double x) { return q_derivative(F, x, 1, ctx); };
    for (double z : {0.5, 1.0, 2.0})
        CHECK(jackson_integral_finite(dF, 0.0, z, ctx) == doctest::Approx(F(z)).epsilon(1e-12));

    // product rule at random points over polynomial/exponential atoms
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(0.1, 1.2);
    std::vector<LatticeFunction1D> atoms{
        [](double x) { return x; },
        [](double x) { return x * x; },
        [ctx](double x) { return q_exp_small(-x, ctx); },
        [ctx](double x) { return q_exp_big(0.5 * x, ctx); },
    };
    for (int i = 0; i < 30; ++i) {
        auto& f = atoms[i % atoms.size()];
        auto& g = atoms[(i + 1 + i / 4) % atoms.size()];
        double x = dist(rng);
        auto fg = [&](double u) { return f(u) * g(u); };
        double lhs = q_derivative(fg, x, 1, ctx);
        double rhs = f(x) * q_derivative(g, x, 1, ctx) + g(ctx.q * x) * q_derivative(f, x, 1, ctx);
        double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
        CHECK(std::fabs(lhs - rhs) / scale < 1e-11);
    }

    // integration by parts on [0, 1] for polynomials
    auto f = [](double x) { return x * x; };
    auto g = [](double x) { return x * x * x; };
    auto dg = [&](double x) { return q_derivative(g, x, 1, ctx); };
    auto df = [&](double x) { return q_derivative(f, x, 1, ctx); };
    double lhs = jackson_integral_finite([&](double x) { return f(x) * dg(x); }, 0.0, 1.0, ctx);
    double rhs = f(1.0) * g(1.0) -
                 jackson_integral_finite([&](double x) { return g(ctx.q * x) * df(x); }, 0.0, 1.0, ctx);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("jackson_integral_improper") {
    FloatContext ctx(0.5);
    LatticeSumPlan plan; // defaults: A = 1, bilateral
    plan.tol = 1e-16;

    // telescoping: integral of e_q(-x) over the bilateral lattice is exactly 1
    CHECK(jackson_integral_improper([&](double x) { return q_exp_small(-x, ctx); }, plan, ctx) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK(jackson_integral_improper([](double) { return 0.0; }, plan, ctx) == 0.0);

    // kernel-adapted lattice: x E_q(-q s x) with A = (1-q) s truncates naturally
    double s = 2.0;
    LatticeSumPlan adapted;
    adapted.A = (1.0 - ctx.q) * s;
    adapted.tol = 1e-16;
    double got = jackson_integral_improper(
        [&](double x) { return x * q_exp_big(-ctx.q * s * x, ctx); }, adapted, ctx);
    CHECK(got == doctest::Approx(1.0 / (s * s)).epsilon(1e-12));

    // the adapted kernel vanishes identically at k < 0 lattice indices
    for (long k = -5; k < 0; ++k) CHECK(q_pochhammer_inf_qint(k + 1, ctx) == 0.0);

    // divergent tails carry a diagnostic naming the offending side
    CHECK_THROWS_WITH_AS(jackson_integral_improper([](double x) { return x * x; }, plan, ctx),
                         doctest::Contains("large-x"), divergence_error);
    CHECK_THROWS_WITH_AS(jackson_integral_improper([](double x) { return 1.0 / (x * x * x); }, plan, ctx),
                         doctest::Contains("small-x"), divergence_error);
}

TEST_CASE("improper 2-D tensor product") {
    FloatContext ctx(0.5);
    LatticeSumPlan plan;
    plan.tol = 1e-16;
    double got = jackson_integral_improper_2d(
        [&](double x, double y) { return q_exp_small(-x, ctx) * q_exp_small(-y, ctx); }, plan, plan, ctx);
    CHECK(got == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("plan validation") {
    LatticeSumPlan plan;
    plan.A = -1;
    CHECK_THROWS_AS(plan.validate(), domain_error);
    plan = LatticeSumPlan{};
    plan.k_min = 5;
    CHECK_THROWS_AS(plan.validate(), domain_error);
}
