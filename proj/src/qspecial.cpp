#include "qlt/qspecial.hpp"

#include <cmath>

#include "qlt/qcore.hpp"

namespace qlt {

const char* to_string(TrigKind t) {
    switch (t) {
        case TrigKind::cos_small: return "cos_small";
        case TrigKind::sin_small: return "sin_small";
        case TrigKind::cos_big: return "cos_big";
        case TrigKind::sin_big: return "sin_big";
        case TrigKind::cosh_small: return "cosh_small";
        case TrigKind::sinh_small: return "sinh_small";
        case TrigKind::cosh_big: return "cosh_big";
        case TrigKind::sinh_big: return "sinh_big";
    }
    return "?";
}

bool trig_is_big(TrigKind t) {
    return t == TrigKind::cos_big || t == TrigKind::sin_big || t == TrigKind::cosh_big || t == TrigKind::sinh_big;
}

namespace {

// Shared stopping rule: accept after `need_small` consecutive terms below
// tol * |partial sum|; flag divergence after sustained growth.
struct SeriesAccumulator {
    double sum = 0.0;
    int small_run = 0;
    int growth_run = 0;
    double prev_mag = -1.0;
    double tol;
    bool growth_guard; // entire series (q-power damped) rise before decaying
    int need_small = 3;
    int growth_limit = 12;
    long min_terms_before_growth_check = 8;
    long n = 0;

    explicit SeriesAccumulator(double tol_, bool growth_guard_ = true) : tol(tol_), growth_guard(growth_guard_) {}

    // returns true when the series may stop
    bool feed(double term) {
        sum += term;
        double mag = std::fabs(term);
        if (!std::isfinite(term)) throw convergence_error("series term overflowed");
        if (mag <= tol * std::fabs(sum)) {
            if (++small_run >= need_small) return true;
        } else {
            small_run = 0;
        }
        if (growth_guard && n >= min_terms_before_growth_check && prev_mag >= 0.0 && mag > prev_mag) {
            if (++growth_run >= growth_limit)
                throw convergence_error("series terms grow: argument outside the convergence domain");
        } else {
            growth_run = 0;
        }
        prev_mag = mag;
        ++n;
        return false;
    }
};

} // namespace

double q_hypergeom(const std::vector<double>& upper, const std::vector<double>& lower, double z,
                   const FloatContext& ctx) {
    const double q = ctx.q;
    const int power = 1 + static_cast<int>(lower.size()) - static_cast<int>(upper.size());
    // positive power carries q^C(k,2) damping: the series is entire and its
    // terms may rise before decaying
    SeriesAccumulator acc(ctx.tol, power <= 0);
    double term = 1.0;
    double qk = 1.0; // q^k
    for (long k = 0; k < ctx.max_terms; ++k) {
        if (acc.feed(term)) return acc.sum;
        // ratio t_{k+1}/t_k
        double ratio = z / (1.0 - qk * q);
        for (double a : upper) ratio *= (1.0 - a * qk);
        for (double b : lower) {
            double fac = 1.0 - b * qk;
            if (std::fabs(fac) < 1e-14)
                throw pole_error("q_hypergeom: lower-parameter Pochhammer factor vanished");
            ratio /= fac;
        }
        if (power != 0) {
            double extra = -qk; // (-1) q^k
            double e = 1.0;
            for (int i = 0; i < std::abs(power); ++i) e *= extra;
            ratio *= (power > 0) ? e : 1.0 / e;
        }
        term *= ratio;
        qk *= q;
    }
    throw convergence_error("q_hypergeom: series did not settle within max_terms");
}

double q_exp_small(double z, const FloatContext& ctx) {
    if (z == 0.0) return 1.0;
    double w = (1.0 - ctx.q) * z;
    double prod = 1.0;
    for (long j = 0; j < ctx.max_terms; ++j) {
        if (std::fabs(w) < ctx.tol) return 1.0 / prod;
        double factor = 1.0 - w;
        if (std::fabs(factor) < 1e-13)
            throw pole_error("q_exp_small: product factor vanished (argument at a pole of e_q)");
        prod *= factor;
        w *= ctx.q;
    }
    throw convergence_error("q_exp_small: product did not settle within max_terms");
}

double q_exp_big(double z, const FloatContext& ctx) {
    if (z == 0.0) return 1.0;
    double w = (1.0 - ctx.q) * z;
    double prod = 1.0;
    for (long j = 0; j < ctx.max_terms; ++j) {
        if (std::fabs(w) < ctx.tol) return prod;
        double factor = 1.0 + w;
        if (factor == 0.0) return 0.0; // exact zero of the entire function
        prod *= factor;
        w *= ctx.q;
    }
    throw convergence_error("q_exp_big: product did not settle within max_terms");
}

double q_trig(double z, TrigKind which, const FloatContext& ctx) {
    const double q = ctx.q;
    bool big = trig_is_big(which);
    bool alternating = (which == TrigKind::cos_small || which == TrigKind::sin_small ||
                        which == TrigKind::cos_big || which == TrigKind::sin_big);
    bool odd = (which == TrigKind::sin_small || which == TrigKind::sin_big || which == TrigKind::sinh_small ||
                which == TrigKind::sinh_big);

    // first term: z^m q^{C(m,2)}/[m]_q! with m = 0 or 1
    double term = odd ? z : 1.0;
    if (term == 0.0) return 0.0;
    SeriesAccumulator acc(ctx.tol, !big);
    double z2 = z * z;
    for (long n = 0; n < ctx.max_terms; ++n) {
        if (acc.feed(term)) return acc.sum;
        long m = 2 * n + (odd ? 1 : 0); // current power of z
        double denom = q_number<double>(m + 1, ctx) * q_number<double>(m + 2, ctx);
        double ratio = z2 / denom;
        if (alternating) ratio = -ratio;
        if (big) {
            // q^{C(m+2,2)-C(m,2)} = q^{2m+1}
            ratio *= std::pow(q, static_cast<double>(2 * m + 1));
        }
        term *= ratio;
    }
    throw convergence_error("q_trig: series did not settle within max_terms");
}

double q_gamma_first(double t, const FloatContext& ctx) {
    if (!(t > 0)) throw domain_error("q_gamma_first: requires t > 0");
    if (std::floor(t) == t) {
        long n = static_cast<long>(t);
        return q_factorial<double>(n - 1, ctx);
    }
    double qq_inf = q_pochhammer_inf(ctx.q, ctx);
    double qt_inf = q_pochhammer_inf(std::pow(ctx.q, t), ctx);
    return qq_inf * std::pow(1.0 - ctx.q, 1.0 - t) / qt_inf;
}

LatticeSumPlan second_kind_plan() {
    LatticeSumPlan plan;
    plan.A = 1.0;
    plan.k_min = -300;
    plan.k_max = 2000;
    plan.tol = 1e-15;
    plan.consecutive_small = 3;
    plan.divergence_guard = 60;
    return plan;
}

double q_gamma_second(double t, const FloatContext& ctx) {
    if (!(t > 0)) throw domain_error("q_gamma_second: requires t > 0");
    if (std::floor(t) == t) {
        long n = static_cast<long>(t);
        double g = q_factorial<double>(n - 1, ctx);
        return std::pow(ctx.q, -static_cast<double>(binom2(n))) * g;
    }
    auto integrand = [&](double x) { return std::pow(x, t - 1.0) * q_exp_small(-x, ctx); };
    return jackson_integral_improper(integrand, second_kind_plan(), ctx);
}

} // namespace qlt
