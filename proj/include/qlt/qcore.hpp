#ifndef QLT_QCORE_HPP
#define QLT_QCORE_HPP

#include <cmath>
#include <vector>

#include "qlt/context.hpp"
#include "qlt/errors.hpp"
#include "qlt/poly2.hpp"

namespace qlt {

// The six expansion laws for q-deformed binomial-type sums.
//   ward_add/ward_sub : coefficient [n k]_q, signs (-1)^(n-k) for sub
//   coadd/cosub       : extra factor q^{k(k-n)}
//   qpow_add/qpow_sub : extra factor q^{C(n-k,2)}; equal to the factor
//                       products prod_i (x +- y q^i)
enum class AdditionKind { ward_add, ward_sub, coadd, cosub, qpow_add, qpow_sub };

inline const char* to_string(AdditionKind k) {
    switch (k) {
        case AdditionKind::ward_add: return "ward_add";
        case AdditionKind::ward_sub: return "ward_sub";
        case AdditionKind::coadd: return "coadd";
        case AdditionKind::cosub: return "cosub";
        case AdditionKind::qpow_add: return "qpow_add";
        case AdditionKind::qpow_sub: return "qpow_sub";
    }
    return "?";
}

// [n]_q for integer n (any sign); exact in exact mode.
template <class S>
S q_number(long n, const QContext<S>& ctx) {
    const S one = scalar_traits<S>::from_long(1);
    return (one - ctx.qpow(n)) / (one - ctx.q);
}

// [a]_q for a general scalar argument. Exact mode requires an integer.
template <class S>
S q_number(const S& a, const QContext<S>& ctx) {
    if (scalar_traits<S>::is_integer(a)) return q_number<S>(scalar_traits<S>::to_long(a), ctx);
    if constexpr (scalar_traits<S>::exact) {
        throw exact_input_error("q_number: non-integer argument has no exact value");
    } else {
        return (1.0 - std::pow(ctx.q, a)) / (1.0 - ctx.q);
    }
}

template <class S>
S q_factorial(long n, const QContext<S>& ctx) {
    if (n < 0) throw domain_error("q_factorial: negative argument");
    S acc = scalar_traits<S>::from_long(1);
    for (long k = 1; k <= n; ++k) acc = acc * q_number<S>(k, ctx);
    return acc;
}

template <class S>
S q_binomial(long n, long k, const QContext<S>& ctx) {
    if (n < 0 || k < 0 || k > n) throw domain_error("q_binomial: requires 0 <= k <= n");
    S acc = scalar_traits<S>::from_long(1);
    for (long j = 0; j < k; ++j) acc = acc * q_number<S>(n - j, ctx) / q_number<S>(j + 1, ctx);
    return acc;
}

// (a;q)_n, finite case.
template <class S>
S q_pochhammer(const S& a, long n, const QContext<S>& ctx) {
    if (n < 0) throw domain_error("q_pochhammer: negative count");
    const S one = scalar_traits<S>::from_long(1);
    S acc = one;
    for (long k = 0; k < n; ++k) acc = acc * (one - a * ctx.qpow(k));
    return acc;
}

// (a;q)_infinity. Truncates once the running factor is within tol of 1.
inline double q_pochhammer_inf(double a, const FloatContext& ctx) {
    double acc = 1.0;
    double aq = a;
    for (long k = 0; k < ctx.max_terms; ++k) {
        if (std::fabs(aq) < ctx.tol) return acc;
        acc *= (1.0 - aq);
        aq *= ctx.q;
    }
    throw convergence_error("q_pochhammer_inf: max_terms exhausted before factors reached 1");
}

// (q^m;q)_infinity for integer m. Exactly zero for m <= 0 because the factor
// (1 - q^0) appears in the product.
inline double q_pochhammer_inf_qint(long m, const FloatContext& ctx) {
    if (m <= 0) return 0.0;
    double acc = 1.0;
    double w = 1.0;
    for (long j = 0; j < m; ++j) w *= ctx.q; // w = q^m
    for (long k = 0; k < ctx.max_terms; ++k) {
        if (w < ctx.tol) return acc;
        acc *= (1.0 - w);
        w *= ctx.q;
    }
    throw convergence_error("q_pochhammer_inf_qint: max_terms exhausted");
}

// (a;q)_alpha = (a;q)_inf / (a q^alpha; q)_inf with the real principal power.
inline double q_pochhammer_real(double a, double alpha, const FloatContext& ctx) {
    double shifted = a * std::pow(ctx.q, alpha);
    double den = q_pochhammer_inf(shifted, ctx);
    if (den == 0.0) throw pole_error("q_pochhammer_real: denominator product vanished");
    return q_pochhammer_inf(a, ctx) / den;
}

// Degree-n homogeneous expansion of the selected addition law as an explicit
// bivariate polynomial.
template <class S>
QPoly2<S> expand_q_addition(AdditionKind kind, long n, const QContext<S>& ctx) {
    if (n < 0) throw domain_error("expand_q_addition: negative degree");
    QPoly2<S> p;
    for (long k = 0; k <= n; ++k) {
        S c = q_binomial<S>(n, k, ctx);
        switch (kind) {
            case AdditionKind::ward_add: break;
            case AdditionKind::ward_sub:
                if ((n - k) % 2) c = -c;
                break;
            case AdditionKind::coadd: c = c * ctx.qpow(k * (k - n)); break;
            case AdditionKind::cosub:
                c = c * ctx.qpow(k * (k - n));
                if ((n - k) % 2) c = -c;
                break;
            case AdditionKind::qpow_add: c = c * ctx.qpow(binom2(n - k)); break;
            case AdditionKind::qpow_sub:
                c = c * ctx.qpow(binom2(n - k));
                if ((n - k) % 2) c = -c;
                break;
        }
        p.add_term(static_cast<int>(k), static_cast<int>(n - k), c);
    }
    return p;
}

// sum_{n<=N} a_n w_n (alpha x (+) beta y)^n with the series weight matching
// the transform convention of the addition law:
//   ward_add : w_n = 1/[n]_q!
//   coadd    : w_n = q^{C(n,2)}/[n]_q!
template <class S>
QPoly2<S> series_q_compose(const std::vector<S>& coeffs, AdditionKind kind, const S& alpha, const S& beta,
                           const QContext<S>& ctx) {
    if (kind != AdditionKind::ward_add && kind != AdditionKind::coadd)
        throw domain_error("series_q_compose: kind must be ward_add or coadd");
    QPoly2<S> acc;
    const S zero = scalar_traits<S>::from_long(0);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (coeffs[n] == zero) continue;
        S w = scalar_traits<S>::from_long(1) / q_factorial<S>(static_cast<long>(n), ctx);
        if (kind == AdditionKind::coadd) w = w * ctx.qpow(binom2(static_cast<long>(n)));
        QPoly2<S> term = expand_q_addition<S>(kind, static_cast<long>(n), ctx).scale_args(alpha, beta);
        acc = acc + term * (coeffs[n] * w);
    }
    return acc;
}

} // namespace qlt

#endif
