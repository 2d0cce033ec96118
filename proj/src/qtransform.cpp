#include "qlt/qtransform.hpp"

#include <cmath>
#include <sstream>

namespace qlt {

double first_kind_kernel_term(long k, const FloatContext& ctx) { return q_pochhammer_inf_qint(k + 1, ctx); }

LatticeSumPlan first_kind_adapted_plan(double freq, const FloatContext& ctx) {
    LatticeSumPlan plan;
    plan.A = (1.0 - ctx.q) * freq;
    plan.k_min = -8; // kernel terms are exactly zero there; kept for the invariant
    plan.k_max = 4000;
    plan.tol = 1e-15;
    // (q^{k+1};q)_inf rises toward 1 over the first steps at large q; only a
    // sustained rise marks a genuinely divergent integrand
    plan.divergence_guard = 60;
    return plan;
}

namespace {

// kernel products run at machine precision regardless of the caller tolerance
FloatContext kernel_ctx(const FloatContext& ctx) { return FloatContext(ctx.q, 1e-17, ctx.max_terms); }

// prod_j (1 + u q^j) / (1 + w q^j) = E_q-type product over e_q-kernel product,
// accumulated jointly so neither factor overflows alone (requires w > 0)
double ratio_product_real(double u, double w, const FloatContext& kctx) {
    double acc = 1.0;
    for (long j = 0; j < kctx.max_terms; ++j) {
        if (std::fabs(u) < kctx.tol && std::fabs(w) < kctx.tol) return acc;
        double num = 1.0 + u;
        if (num == 0.0) return 0.0;
        acc *= num / (1.0 + w);
        u *= kctx.q;
        w *= kctx.q;
    }
    throw convergence_error("ratio_product_real: product did not settle");
}

// real and imaginary parts of prod_j (1 + i u q^j) / (1 + w q^j)
void ratio_product_complex(double u, double w, const FloatContext& kctx, double& re, double& im) {
    re = 1.0;
    im = 0.0;
    for (long j = 0; j < kctx.max_terms; ++j) {
        if (std::fabs(u) < kctx.tol && std::fabs(w) < kctx.tol) return;
        double den = 1.0 + w;
        double nre = re - im * u, nim = im + re * u; // multiply by (1 + i u)
        re = nre / den;
        im = nim / den;
        u *= kctx.q;
        w *= kctx.q;
    }
    throw convergence_error("ratio_product_complex: product did not settle");
}

// atom(x) * kernel(x) at lattice index k, fused where separate evaluation
// would overflow
double fused_atom_kernel(const Atom1D<double>& atom, Kind1D kind, bool adapted, double freq, long k, double x,
                         const FloatContext& ctx, const FloatContext& kctx) {
    using Tag = Atom1D<double>::Tag;
    if (kind == Kind1D::first) {
        double kval = adapted ? first_kind_kernel_term(k, kctx) : q_exp_big(-ctx.q * freq * x, kctx);
        return kval == 0.0 ? 0.0 : atom1d_eval(atom, x, ctx) * kval;
    }
    const double w = (1.0 - ctx.q) * freq * x;
    if (atom.tag == Tag::exp_big) {
        return ratio_product_real((1.0 - ctx.q) * atom.a * x, w, kctx);
    }
    if (atom.tag == Tag::trig && trig_is_big(atom.trig)) {
        double u = (1.0 - ctx.q) * atom.a * x;
        switch (atom.trig) {
            case TrigKind::cos_big:
            case TrigKind::sin_big: {
                double re, im;
                ratio_product_complex(u, w, kctx, re, im);
                return atom.trig == TrigKind::cos_big ? re : im;
            }
            case TrigKind::cosh_big:
                return 0.5 * (ratio_product_real(u, w, kctx) + ratio_product_real(-u, w, kctx));
            case TrigKind::sinh_big:
                return 0.5 * (ratio_product_real(u, w, kctx) - ratio_product_real(-u, w, kctx));
            default: break;
        }
    }
    double kval = q_exp_small(-freq * x, kctx);
    return kval == 0.0 ? 0.0 : atom1d_eval(atom, x, ctx) * kval;
}

} // namespace

double qlap1d_numeric(const LatticeFunction1D& f, double s, Kind1D kind, const FloatContext& ctx,
                      const std::optional<LatticeSumPlan>& plan_override) {
    if (!(s > 0)) throw domain_error("qlap1d_numeric: frequency must be positive");
    FloatContext kctx = kernel_ctx(ctx);
    if (kind == Kind1D::first) {
        if (plan_override) {
            // generic lattice: the kernel no longer truncates the sum
            auto integrand = [&](double t) {
                double kval = q_exp_big(-ctx.q * s * t, kctx);
                return kval == 0.0 ? 0.0 : f(t) * kval;
            };
            return jackson_integral_improper(integrand, *plan_override, ctx);
        }
        LatticeSumPlan plan = first_kind_adapted_plan(s, ctx);
        auto term = [&](long k, double t) {
            double kval = first_kind_kernel_term(k, kctx);
            return kval == 0.0 ? 0.0 : f(t) * kval;
        };
        return improper_lattice_sum(term, plan, ctx);
    }
    LatticeSumPlan plan = plan_override ? *plan_override : second_kind_plan();
    auto integrand = [&](double t) {
        double kval = q_exp_small(-s * t, kctx);
        return kval == 0.0 ? 0.0 : f(t) * kval;
    };
    return jackson_integral_improper(integrand, plan, ctx);
}

double qlap1d_numeric(const Atom1D<double>& atom, double s, Kind1D kind, const FloatContext& ctx,
                      const std::optional<LatticeSumPlan>& plan_override) {
    check_axis_region(atom, kind, s, ctx, kind == Kind1D::first ? "t (E_q kernel)" : "t (e_q kernel)");
    return axis_fused_sums(kind, s, ctx, {atom}, plan_override, "t")[0];
}

std::vector<double> axis_fused_sums(Kind1D kind, double freq, const FloatContext& ctx,
                                    const std::vector<Atom1D<double>>& atoms,
                                    const std::optional<LatticeSumPlan>& plan_override, const char* axis_name) {
    if (!(freq > 0)) throw domain_error("axis_fused_sums: frequency must be positive");
    LatticeSumPlan plan;
    if (plan_override) {
        plan = *plan_override;
    } else if (kind == Kind1D::first) {
        plan = first_kind_adapted_plan(freq, ctx);
    } else {
        plan = second_kind_plan();
    }
    const bool adapted = (kind == Kind1D::first) && !plan_override;
    const double one_minus_q = 1.0 - ctx.q;
    FloatContext kctx = kernel_ctx(ctx);

    std::vector<double> sums(atoms.size(), 0.0);

    auto run_tail = [&](long k_begin, long k_end, long step) -> bool {
        int small_run = 0, growth_run = 0;
        double prev_mag = -1.0;
        for (long k = k_begin; step > 0 ? k <= k_end : k >= k_end; k += step) {
            double x = std::pow(ctx.q, static_cast<double>(k)) / plan.A;
            double weight = one_minus_q * x;
            double mag = 0.0;
            bool all_small = true;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                double term = weight * fused_atom_kernel(atoms[i], kind, adapted, freq, k, x, ctx, kctx);
                if (!std::isfinite(term)) {
                    std::ostringstream os;
                    os << axis_name << " axis: non-finite lattice term at k=" << k;
                    throw divergence_error(os.str());
                }
                sums[i] += term;
                mag = std::max(mag, std::fabs(term));
                if (std::fabs(term) > plan.tol * std::fabs(sums[i])) all_small = false;
            }
            if (all_small) {
                if (++small_run >= plan.consecutive_small) return true;
            } else {
                small_run = 0;
            }
            if (prev_mag >= 0.0 && mag > prev_mag && mag > plan.tol) {
                if (++growth_run >= plan.divergence_guard) {
                    std::ostringstream os;
                    os << axis_name << " axis: lattice terms grow on the "
                       << (step > 0 ? "small-x tail (k -> +inf)" : "large-x tail (k -> -inf)") << " at k=" << k;
                    throw divergence_error(os.str());
                }
            } else {
                growth_run = 0;
            }
            prev_mag = mag;
        }
        return false;
    };

    if (!run_tail(0, plan.k_max, +1)) {
        std::ostringstream os;
        os << axis_name << " axis: small-x tail not converged within the window";
        throw convergence_error(os.str());
    }
    if (!adapted && plan.k_min <= -1) {
        if (!run_tail(-1, plan.k_min, -1)) {
            std::ostringstream os;
            os << axis_name << " axis: large-x tail not converged within the window";
            throw convergence_error(os.str());
        }
    }
    return sums;
}

} // namespace qlt
