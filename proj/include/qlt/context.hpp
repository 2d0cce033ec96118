#ifndef QLT_CONTEXT_HPP
#define QLT_CONTEXT_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "qlt/errors.hpp"
#include "qlt/rational.hpp"

namespace qlt {

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_long(long v) { return static_cast<double>(v); }
    static double from_ratio(long n, long d) { return static_cast<double>(n) / static_cast<double>(d); }
    static double to_double(double v) { return v; }
    static double from_rational(const Rational& v) { return qlt::to_double(v); }
    static bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }
    static long to_long(double v) { return static_cast<long>(std::llround(v)); }
    static std::string str(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
    static std::optional<double> sqrt(double v) {
        if (v < 0) return std::nullopt;
        return std::sqrt(v);
    }
    static std::optional<double> nth_root(double v, unsigned n) {
        if (n == 0) return std::nullopt;
        if (v < 0 && n % 2 == 0) return std::nullopt;
        return v < 0 ? -std::pow(-v, 1.0 / n) : std::pow(v, 1.0 / n);
    }
    // tol-relative comparison; used where float mode mirrors exact equality tests
    static bool approx_equal(double a, double b, double tol) {
        double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
        return std::fabs(a - b) <= tol * scale;
    }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_long(long v) { return Rational(v); }
    static Rational from_ratio(long n, long d) { return Rational(n, d); }
    static double to_double(const Rational& v) { return qlt::to_double(v); }
    static Rational from_rational(const Rational& v) { return v; }
    static bool is_integer(const Rational& v) { return qlt::is_integer(v); }
    static long to_long(const Rational& v) { return qlt::to_long(v); }
    static std::string str(const Rational& v) { return qlt::to_string(v); }
    static std::optional<Rational> sqrt(const Rational& v) { return exact_sqrt(v); }
    static std::optional<Rational> nth_root(const Rational& v, unsigned n) { return exact_nth_root(v, n); }
    static bool approx_equal(const Rational& a, const Rational& b, double) { return a == b; }
};

template <class S>
inline S pow_int(const S& base, long e) {
    if (e == 0) return scalar_traits<S>::from_long(1);
    bool neg = e < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    S acc = scalar_traits<S>::from_long(1);
    S b = base;
    while (n) {
        if (n & 1ul) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    if (neg) {
        if (acc == scalar_traits<S>::from_long(0)) throw domain_error("pow_int: zero base with negative exponent");
        return scalar_traits<S>::from_long(1) / acc;
    }
    return acc;
}

template <>
inline Rational pow_int<Rational>(const Rational& base, long e) {
    return qlt::pow_int(base, e);
}

// Deformation parameter and evaluation policy. Exactness is carried by the
// scalar type: QContext<Rational> is exact mode, QContext<double> float mode.
template <class S>
struct QContext {
    S q;
    double tol = 1e-12;
    long max_terms = 200000;

    explicit QContext(S q_, double tol_ = 1e-12, long max_terms_ = 200000)
        : q(std::move(q_)), tol(tol_), max_terms(max_terms_) {
        S zero = scalar_traits<S>::from_long(0);
        S one = scalar_traits<S>::from_long(1);
        if (!(q > zero) || !(q < one)) throw domain_error("QContext: q must lie strictly inside (0,1)");
        if (!(tol > 0)) throw domain_error("QContext: tol must be positive");
        if (max_terms <= 0) throw domain_error("QContext: max_terms must be positive");
    }

    static constexpr bool exact = scalar_traits<S>::exact;
    double qd() const { return scalar_traits<S>::to_double(q); }
    S qpow(long e) const { return pow_int<S>(q, e); }
};

using ExactContext = QContext<Rational>;
using FloatContext = QContext<double>;

inline FloatContext to_float(const ExactContext& ctx) {
    return FloatContext(to_double(ctx.q), ctx.tol, ctx.max_terms);
}

inline long binom2(long n) { return n * (n - 1) / 2; }

} // namespace qlt

#endif
