#ifndef QLT_QSYMBOLIC_HPP
#define QLT_QSYMBOLIC_HPP

#include <map>
#include <optional>
#include <utility>

#include "qlt/descriptor.hpp"
#include "qlt/qtransform.hpp"
#include "qlt/rsexpr.hpp"

namespace qlt {

// ---- partial fractions --------------------------------------------------------

namespace detail {

template <class S>
std::vector<S> poly_mul(const std::vector<S>& a, const std::vector<S>& b) {
    const S zero = scalar_traits<S>::from_long(0);
    std::vector<S> out(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

// Solve M z = rhs by Gaussian elimination; singular systems raise
// multiplicity_error (they arise from repeated denominator factors).
template <class S>
std::vector<S> solve_linear(std::vector<std::vector<S>> M, std::vector<S> rhs) {
    const S zero = scalar_traits<S>::from_long(0);
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        if constexpr (scalar_traits<S>::exact) {
            while (pivot < n && M[pivot][col] == zero) ++pivot;
        } else {
            double best = 0;
            pivot = n;
            for (std::size_t i = col; i < n; ++i) {
                double m = std::fabs(scalar_traits<S>::to_double(M[i][col]));
                if (m > best) {
                    best = m;
                    pivot = i;
                }
            }
            if (pivot < n && best < 1e-13) pivot = n;
        }
        if (pivot >= n) throw multiplicity_error("partial_fractions: denominator factors are not distinct");
        std::swap(M[col], M[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col] == zero) continue;
            S factor = M[i][col] / M[col][col];
            for (std::size_t j = col; j < n; ++j) M[i][j] = M[i][j] - factor * M[col][j];
            rhs[i] = rhs[i] - factor * rhs[col];
        }
    }
    std::vector<S> z(n, zero);
    for (std::size_t i = 0; i < n; ++i) z[i] = rhs[i] / M[i][i];
    return z;
}

} // namespace detail

// Residue decomposition over distinct monic-izable linear and quadratic
// factors, exact where the scalars are exact. deg(numerator) < deg(denominator).
template <class S>
SExpr<S> partial_fractions(std::vector<S> numerator, std::vector<LinFactor<S>> lin,
                           std::vector<QuadFactor<S>> quad) {
    const S zero = scalar_traits<S>::from_long(0);
    const S one = scalar_traits<S>::from_long(1);
    while (!numerator.empty() && numerator.back() == zero) numerator.pop_back();
    // monic-ize, folding the scale into the numerator
    S scale = one;
    for (auto& lf : lin) {
        if (lf.kappa == zero) throw domain_error("partial_fractions: zero leading coefficient");
        scale = scale * lf.kappa;
        lf.offset = lf.offset / lf.kappa;
        lf.kappa = one;
    }
    for (auto& qf : quad) {
        if (qf.kappa == zero) throw domain_error("partial_fractions: zero leading coefficient");
        scale = scale * qf.kappa * qf.kappa;
        qf.cons = qf.cons / (qf.kappa * qf.kappa);
        qf.kappa = one;
    }
    for (auto& c : numerator) c = c / scale;

    const std::size_t degree = lin.size() + 2 * quad.size();
    if (degree == 0) throw domain_error("partial_fractions: no denominator factors");
    if (numerator.size() >= degree + 1)
        throw domain_error("partial_fractions: numerator degree must be below denominator degree");

    // columns: one residue per linear factor, then (alpha, beta) per quadratic
    std::vector<std::vector<S>> cols;
    auto product_excluding = [&](std::size_t skip_lin, std::size_t skip_quad) {
        std::vector<S> p{one};
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (i != skip_lin) p = detail::poly_mul(p, {-lin[i].offset, one});
        for (std::size_t j = 0; j < quad.size(); ++j)
            if (j != skip_quad) p = detail::poly_mul(p, {quad[j].cons, zero, one});
        p.resize(degree, zero);
        return p;
    };
    for (std::size_t i = 0; i < lin.size(); ++i) cols.push_back(product_excluding(i, quad.size()));
    for (std::size_t j = 0; j < quad.size(); ++j) {
        std::vector<S> base = product_excluding(lin.size(), j);
        std::vector<S> shifted(degree, zero);
        for (std::size_t t = 0; t + 1 < degree; ++t) shifted[t + 1] = base[t]; // u * base
        cols.push_back(shifted);
        cols.push_back(base);
    }
    std::vector<std::vector<S>> M(degree, std::vector<S>(degree, zero));
    for (std::size_t row = 0; row < degree; ++row)
        for (std::size_t col = 0; col < cols.size(); ++col) M[row][col] = cols[col][row];
    std::vector<S> rhs(degree, zero);
    for (std::size_t i = 0; i < numerator.size(); ++i) rhs[i] = numerator[i];

    std::vector<S> z = detail::solve_linear<S>(std::move(M), std::move(rhs));

    SExpr<S> out;
    std::size_t idx = 0;
    for (auto& lf : lin) {
        if (!(z[idx] == zero)) {
            SAtom<S> a;
            a.coef = z[idx];
            a.part.lin.push_back(lf);
            out.atoms.push_back(std::move(a));
        }
        ++idx;
    }
    for (auto& qf : quad) {
        if (!(z[idx] == zero)) {
            SAtom<S> a;
            a.coef = z[idx];
            a.part.expo = Rational(1);
            a.part.quad.push_back(qf);
            out.atoms.push_back(std::move(a));
        }
        ++idx;
        if (!(z[idx] == zero)) {
            SAtom<S> a;
            a.coef = z[idx];
            a.part.quad.push_back(qf);
            out.atoms.push_back(std::move(a));
        }
        ++idx;
    }
    return out;
}

// Decomposition over distinct sloped factors (s - w_i r), the shape produced
// by the wave equation. The numerator is a polynomial in s; residues pick up
// powers of r.
template <class S>
RSExpr<S> partial_fractions_sloped(const std::vector<S>& numerator, const std::vector<S>& slopes) {
    const S zero = scalar_traits<S>::from_long(0);
    const std::size_t d = slopes.size();
    if (d == 0) throw domain_error("partial_fractions_sloped: no factors");
    if (numerator.size() >= d + 1)
        throw domain_error("partial_fractions_sloped: numerator degree must be below denominator degree");
    for (std::size_t i = 0; i < d; ++i) {
        if (slopes[i] == zero) throw domain_error("partial_fractions_sloped: zero slope");
        for (std::size_t j = i + 1; j < d; ++j)
            if (slopes[i] == slopes[j]) throw multiplicity_error("partial_fractions_sloped: repeated factor");
    }
    RSExpr<S> out;
    for (std::size_t i = 0; i < d; ++i) {
        S denom = scalar_traits<S>::from_long(1);
        for (std::size_t j = 0; j < d; ++j)
            if (j != i) denom = denom * (slopes[i] - slopes[j]);
        for (std::size_t t = 0; t < numerator.size(); ++t) {
            if (numerator[t] == zero) continue;
            RSAtom<S> a;
            a.coef = numerator[t] * pow_int<S>(slopes[i], static_cast<long>(t)) / denom;
            a.r.expo = Rational(static_cast<long>(t)) - Rational(static_cast<long>(d) - 1);
            a.mixed_slope = slopes[i];
            out.atoms.push_back(std::move(a));
        }
    }
    return out;
}

// ---- inverse lookup -------------------------------------------------------------

template <class S>
struct Inverse1DTerm {
    S coef;
    Atom1D<S> atom;
};

namespace detail {

// Matches one monic per-variable rational piece against the 1-D image table.
template <class S>
std::optional<std::pair<S, Atom1D<S>>> match_varpart_1d(const VarPart<S>& part, const S& coef, Kind1D kind,
                                                        const QContext<S>& ctx, double tol) {
    const S one = scalar_traits<S>::from_long(1);
    const S zero = scalar_traits<S>::from_long(0);
    if (part.lin.empty() && part.quad.empty()) {
        if (!(part.expo < Rational(0))) return std::nullopt;
        Rational p = -part.expo;
        if (p == 1) return std::make_pair(coef, Atom1D<S>::constant());
        try {
            S norm = axis_gamma<S>(kind, p, ctx);
            return std::make_pair(coef / norm, Atom1D<S>::monomial(p - 1));
        } catch (const exact_input_error&) {
            return std::nullopt;
        }
    }
    if (part.quad.empty() && part.lin.size() == 1 && part.expo == 0) {
        S w = part.lin[0].offset;
        if (kind == Kind1D::first) return std::make_pair(coef, Atom1D<S>::exp_small(w));
        return std::make_pair(coef, Atom1D<S>::exp_big(ctx.q * w));
    }
    if (part.lin.empty() && part.quad.size() == 1 && (part.expo == 0 || part.expo == 1)) {
        S C = part.quad[0].cons;
        bool hyper = C < zero;
        auto root = scalar_traits<S>::sqrt(hyper ? -C : C);
        if (!root || *root == zero) return std::nullopt;
        S abar = *root;
        bool big = kind == Kind1D::second;
        S a_param = big ? ctx.q * abar : abar;
        if (part.expo == 1) {
            TrigKind t = hyper ? (big ? TrigKind::cosh_big : TrigKind::cosh_small)
                               : (big ? TrigKind::cos_big : TrigKind::cos_small);
            return std::make_pair(coef, Atom1D<S>::trig_atom(t, a_param));
        }
        TrigKind t = hyper ? (big ? TrigKind::sinh_big : TrigKind::sinh_small)
                           : (big ? TrigKind::sin_big : TrigKind::sin_small);
        return std::make_pair(coef / abar, Atom1D<S>::trig_atom(t, a_param));
    }
    (void)tol;
    return std::nullopt;
}

} // namespace detail

// Inverse of a univariate image: the unique linear combination of 1-D catalog
// atoms whose transform matches. Unmatched atoms raise no_match_error.
template <class S>
std::vector<Inverse1DTerm<S>> inverse_catalog_1d(const SExpr<S>& e, Kind1D kind, const QContext<S>& ctx,
                                                 double tol = 1e-9) {
    SExpr<S> n = normalize(e, tol);
    std::vector<Inverse1DTerm<S>> out;
    std::string residue;
    for (auto& a : n.atoms) {
        auto m = detail::match_varpart_1d<S>(a.part, a.coef, kind, ctx, tol);
        if (m) {
            out.push_back({m->first, m->second});
        } else {
            residue += (residue.empty() ? "" : " + ");
            residue += "(" + scalar_traits<S>::str(a.coef) + ")*" + RSExpr<S>::varpart_str(a.part, "s");
        }
    }
    if (!residue.empty()) throw no_match_error("inverse_catalog_1d: unmatched atoms: " + residue);
    return out;
}

// ---- 2-D inverse ------------------------------------------------------------------

namespace detail {

template <class S>
struct MatchedPiece {
    S coef;
    Descriptor<S> descriptor;
};

template <class S>
bool is_pure_power(const RSAtom<S>& a) {
    return !a.mixed_slope && a.r.lin.empty() && a.r.quad.empty() && a.s.lin.empty() && a.s.quad.empty();
}

template <class S>
bool integer_recip_powers(const RSAtom<S>& a, long& p, long& m) {
    if (!is_pure_power(a)) return false;
    if (!is_integer(a.r.expo) || !is_integer(a.s.expo)) return false;
    long er = to_long(a.r.expo), es = to_long(a.s.expo);
    if (er >= 0 || es >= 0) return false;
    p = -er;
    m = -es;
    return true;
}

// Fit coefficients c_k, k = 0..n against C * a^k * b^(n-k).
template <class S>
bool fit_geometric(const std::vector<S>& c, const S& C, S& a, S& b, double tol) {
    const std::size_t n = c.size() - 1;
    auto root = scalar_traits<S>::nth_root(c[0] / C, static_cast<unsigned>(n));
    if (!root || *root == scalar_traits<S>::from_long(0)) return false;
    b = *root;
    a = c[1] / (C * pow_int<S>(b, static_cast<long>(n) - 1));
    for (std::size_t k = 0; k <= n; ++k) {
        S expect = C * pow_int<S>(a, static_cast<long>(k)) * pow_int<S>(b, static_cast<long>(n - k));
        if (!approx_eq(c[k], expect, tol)) return false;
    }
    return true;
}

// Fit c_k = C * a^k with a shared scale C (b = 1 normalization).
template <class S>
bool fit_geometric_scaled(const std::vector<S>& c, S& scale, S& a, double tol) {
    const S zero = scalar_traits<S>::from_long(0);
    if (c[0] == zero) return false;
    scale = c[0];
    a = c.size() > 1 ? c[1] / c[0] : scalar_traits<S>::from_long(1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        S expect = scale * pow_int<S>(a, static_cast<long>(k));
        if (!approx_eq(c[k], expect, tol)) return false;
    }
    return true;
}

} // namespace detail

// Pattern-matching inversion against the forward catalog. There is no general
// inversion algorithm here: expressions whose atoms are not catalog images
// raise no_match_error listing the residual atoms.
template <class S>
Descriptor<S> inverse_catalog(const RSExpr<S>& expr, TransformKind kind, const QContext<S>& ctx,
                              double tol = 1e-9) {
    using detail::MatchedPiece;
    const S one = scalar_traits<S>::from_long(1);
    const S zero = scalar_traits<S>::from_long(0);
    const Kind1D kx = axis_kind_x(kind), ky = axis_kind_y(kind);

    RSExpr<S> n = normalize(expr, tol);
    if (n.atoms.empty()) return Descriptor<S>::zero();

    std::vector<RSAtom<S>> pool = n.atoms;
    std::vector<MatchedPiece<S>> pieces;
    auto erase_at = [&](std::vector<std::size_t> idx) {
        std::sort(idx.rbegin(), idx.rend());
        for (auto i : idx) pool.erase(pool.begin() + static_cast<long>(i));
    };

    // -- trig pairs over a shared quadratic-denominator pair (kinds 1 and 2) --
    if (kind == TransformKind::k1 || kind == TransformKind::k2) {
        bool big = kind == TransformKind::k2;
        auto is_quad_pair_atom = [&](const RSAtom<S>& a) {
            return !a.mixed_slope && a.r.lin.empty() && a.s.lin.empty() && a.r.quad.size() == 1 &&
                   a.s.quad.size() == 1 && (a.r.expo == 0 || a.r.expo == 1) && (a.s.expo == 0 || a.s.expo == 1);
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < pool.size() && !changed; ++i) {
                if (!is_quad_pair_atom(pool[i])) continue;
                for (std::size_t j = 0; j < pool.size() && !changed; ++j) {
                    if (j == i || !is_quad_pair_atom(pool[j])) continue;
                    const RSAtom<S>&A = pool[i], &B = pool[j];
                    if (!detail::approx_eq(A.r.quad[0].cons, B.r.quad[0].cons, tol)) continue;
                    if (!detail::approx_eq(A.s.quad[0].cons, B.s.quad[0].cons, tol)) continue;
                    S Cr = A.r.quad[0].cons, Cs = A.s.quad[0].cons;
                    bool hyper = Cr < zero;
                    if ((Cs < zero) != hyper) continue;
                    auto ra = scalar_traits<S>::sqrt(hyper ? -Cr : Cr);
                    auto rb = scalar_traits<S>::sqrt(hyper ? -Cs : Cs);
                    if (!ra || !rb || *ra == zero || *rb == zero) continue;
                    S abar = *ra, bbar = *rb;

                    // cos/cosh shape: (1,1) and (0,0)
                    if (A.r.expo == 1 && A.s.expo == 1 && B.r.expo == 0 && B.s.expo == 0) {
                        S c = A.coef;
                        S bfit = hyper ? B.coef / (c * abar) : -B.coef / (c * abar);
                        if (detail::approx_eq(bfit * bfit, bbar * bbar, tol)) {
                            S fa = big ? ctx.q * abar : abar;
                            S fb = big ? ctx.q * bfit : bfit;
                            TrigKind t = hyper ? (big ? TrigKind::cosh_big : TrigKind::cosh_small)
                                               : (big ? TrigKind::cos_big : TrigKind::cos_small);
                            pieces.push_back({c, Descriptor<S>::trig_qadd(fa, fb, t)});
                            erase_at({i, j});
                            changed = true;
                        }
                    }
                    // sin/sinh shape: (0,1) and (1,0)
                    else if (A.r.expo == 0 && A.s.expo == 1 && B.r.expo == 1 && B.s.expo == 0) {
                        S c = A.coef / abar;
                        if (c == zero) continue;
                        S bfit = B.coef / c;
                        if (detail::approx_eq(bfit * bfit, bbar * bbar, tol)) {
                            S fa = big ? ctx.q * abar : abar;
                            S fb = big ? ctx.q * bfit : bfit;
                            TrigKind t = hyper ? (big ? TrigKind::sinh_big : TrigKind::sinh_small)
                                               : (big ? TrigKind::sin_big : TrigKind::sin_small);
                            pieces.push_back({c, Descriptor<S>::trig_qadd(fa, fb, t)});
                            erase_at({i, j});
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    // -- exponential q-addition: single (r-w1)^-1 (s-w2)^-1 atom (kinds 1, 2) --
    if (kind == TransformKind::k1 || kind == TransformKind::k2) {
        for (std::size_t i = 0; i < pool.size();) {
            const RSAtom<S>& a = pool[i];
            bool shape = !a.mixed_slope && a.r.lin.size() == 1 && a.s.lin.size() == 1 && a.r.quad.empty() &&
                         a.s.quad.empty() && a.r.expo == 0 && a.s.expo == 0;
            if (shape) {
                S w1 = a.r.lin[0].offset, w2 = a.s.lin[0].offset;
                if (kind == TransformKind::k1)
                    pieces.push_back({a.coef, Descriptor<S>::exp_qadd(w1, w2, ExpFamily::small)});
                else
                    pieces.push_back({a.coef, Descriptor<S>::exp_qadd(ctx.q * w1, ctx.q * w2, ExpFamily::big)});
                pool.erase(pool.begin() + static_cast<long>(i));
            } else {
                ++i;
            }
        }
    }

    // -- series with unit arguments: complete constant antidiagonals (kinds 1, 2).
    // Runs before the q-addition-power matcher, which would otherwise claim
    // each constant antidiagonal separately.
    if ((kind == TransformKind::k1 || kind == TransformKind::k2) && !pool.empty()) {
        std::map<long, std::map<long, std::size_t>> antidiag;
        bool all_power = true;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            long p, m;
            if (!detail::integer_recip_powers(pool[i], p, m)) {
                all_power = false;
                break;
            }
            antidiag[p + m - 2][p - 1] = i;
        }
        if (all_power && antidiag.size() >= 2) {
            bool ok = true;
            long n_max = antidiag.rbegin()->first;
            std::vector<S> coeffs(static_cast<std::size_t>(n_max) + 1, zero);
            for (auto& [nn, entries] : antidiag) {
                if (entries.size() != static_cast<std::size_t>(nn + 1)) {
                    ok = false;
                    break;
                }
                S c0 = pool[entries.begin()->second].coef;
                for (auto& [k, i] : entries)
                    if (!detail::approx_eq(pool[i].coef, c0, tol)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
                if (kind == TransformKind::k2) c0 = c0 * ctx.qpow(nn);
                coeffs[static_cast<std::size_t>(nn)] = c0;
            }
            if (ok) {
                pieces.push_back({one, Descriptor<S>::series_qadd(coeffs, one, one,
                                                                  kind == TransformKind::k1 ? ExpFamily::small
                                                                                            : ExpFamily::big)});
                pool.clear();
            }
        }
    }

    // -- q-addition powers: complete antidiagonal families of reciprocal powers --
    {
        std::map<long, std::map<long, std::size_t>> antidiag; // n -> k -> pool index
        for (std::size_t i = 0; i < pool.size(); ++i) {
            long p, m;
            if (!detail::integer_recip_powers(pool[i], p, m)) continue;
            long nn = p + m - 2;
            // k3 images index the antidiagonal by the s-power, the others by r
            long k = (kind == TransformKind::k3) ? m - 1 : p - 1;
            antidiag[nn][k] = i;
        }
        std::vector<std::size_t> all_consumed;
        for (auto& [nn, entries] : antidiag) {
            if (nn < 1 || entries.size() != static_cast<std::size_t>(nn + 1)) continue;
            std::vector<S> c;
            std::vector<std::size_t> idx;
            bool full = true;
            for (long k = 0; k <= nn; ++k) {
                auto it = entries.find(k);
                if (it == entries.end()) {
                    full = false;
                    break;
                }
                idx.push_back(it->second);
                c.push_back(pool[it->second].coef);
            }
            if (!full) continue;
            // divide out the kind-specific q-powers
            S C = q_factorial<S>(nn, ctx);
            AdditionKind akind = AdditionKind::ward_add;
            if (kind == TransformKind::k2) {
                C = C * ctx.qpow(-binom2(nn + 1));
                akind = AdditionKind::coadd;
            } else if (kind == TransformKind::k3) {
                C = C * ctx.qpow(-binom2(nn + 1));
                akind = AdditionKind::qpow_add;
                for (long k = 0; k <= nn; ++k)
                    c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] * ctx.qpow(-nn * k);
            } else if (kind == TransformKind::k4) {
                akind = AdditionKind::qpow_add;
                for (long k = 0; k <= nn; ++k)
                    c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] * ctx.qpow(nn - k);
            }
            S fa = zero, fb = zero, scale = one;
            bool matched = false;
            if (kind == TransformKind::k3) {
                // c_k = C * a^{n-k} * b^k: reverse the index order and reuse the fit
                std::vector<S> rev(c.rbegin(), c.rend());
                if (detail::fit_geometric<S>(rev, C, fa, fb, tol)) {
                    matched = true;
                } else if (detail::fit_geometric_scaled<S>(c, scale, fb, tol)) {
                    fa = one;
                    scale = scale / C;
                    matched = true;
                }
            } else {
                if (detail::fit_geometric<S>(c, C, fa, fb, tol)) {
                    matched = true;
                } else if (detail::fit_geometric_scaled<S>(c, scale, fa, tol)) {
                    fb = one;
                    scale = scale / C;
                    matched = true;
                }
            }
            if (matched) {
                pieces.push_back({scale, Descriptor<S>::qadd_power(fa, fb, nn, akind)});
                all_consumed.insert(all_consumed.end(), idx.begin(), idx.end());
            }
        }
        erase_at(all_consumed);
    }

    // -- per-atom monomials and separable products --
    {
        std::vector<std::size_t> consumed;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const RSAtom<S>& a = pool[i];
            if (a.mixed_slope) continue;
            long p, m;
            if (detail::integer_recip_powers(pool[i], p, m)) {
                try {
                    S norm = axis_gamma<S>(kx, Rational(p), ctx) * axis_gamma<S>(ky, Rational(m), ctx);
                    pieces.push_back({a.coef / norm, Descriptor<S>::monomial(Rational(p - 1), Rational(m - 1))});
                    consumed.push_back(i);
                    continue;
                } catch (const exact_input_error&) {
                }
            }
            if (detail::is_pure_power(a) && a.r.expo < Rational(0) && a.s.expo < Rational(0)) {
                // non-integer reciprocal powers (float mode)
                try {
                    S norm = axis_gamma<S>(kx, -a.r.expo, ctx) * axis_gamma<S>(ky, -a.s.expo, ctx);
                    pieces.push_back(
                        {a.coef / norm, Descriptor<S>::monomial(-a.r.expo - 1, -a.s.expo - 1)});
                    consumed.push_back(i);
                    continue;
                } catch (const exact_input_error&) {
                }
            }
            auto mx = detail::match_varpart_1d<S>(a.r, one, kx, ctx, tol);
            auto my = detail::match_varpart_1d<S>(a.s, one, ky, ctx, tol);
            if (mx && my) {
                pieces.push_back({a.coef * mx->first * my->first, Descriptor<S>::separable(mx->second, my->second)});
                consumed.push_back(i);
            }
        }
        erase_at(consumed);
    }

    if (!pool.empty()) {
        std::string residue;
        for (auto& a : pool) {
            RSExpr<S> tmp;
            tmp.atoms.push_back(a);
            residue += (residue.empty() ? "" : " + ") + tmp.str();
        }
        throw no_match_error("inverse_catalog: unmatched atoms: " + residue);
    }

    if (pieces.size() == 1 && detail::approx_eq(pieces[0].coef, one, tol)) return pieces[0].descriptor;
    std::vector<S> coefs;
    std::vector<Descriptor<S>> parts;
    for (auto& p : pieces) {
        coefs.push_back(p.coef);
        parts.push_back(p.descriptor);
    }
    return Descriptor<S>::linear_combo(std::move(coefs), std::move(parts));
}

} // namespace qlt

#endif
