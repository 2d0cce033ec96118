#ifndef QLT_RATIONAL_HPP
#define QLT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "qlt/errors.hpp"

namespace qlt {

// expression templates disabled so arithmetic results are plain values
using BigInt =
    boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double to_double(const Rational& v) { return v.template convert_to<double>(); }

inline bool is_integer(const Rational& v) { return denominator(v) == 1; }

inline long to_long(const Rational& v) {
    if (!is_integer(v)) throw exact_input_error("to_long: value is not an integer");
    return numerator(v).template convert_to<long>();
}

inline std::string to_string(const Rational& v) {
    if (is_integer(v)) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

namespace detail_rational {

// decimal-only integer parse; leading zeros must not trigger octal reading
inline BigInt parse_decimal_int(std::string_view s) {
    if (s.empty()) throw parse_error("empty integer");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw parse_error("sign without digits");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw parse_error("non-digit character");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

} // namespace detail_rational

// Accepts "3", "-3/4", "0.25", "1/2". Decimal strings parse exactly (0.3 -> 3/10).
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw parse_error("cannot parse rational number: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    std::string s(text);
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            BigInt num = detail_rational::parse_decimal_int(s.substr(0, slash));
            BigInt den = detail_rational::parse_decimal_int(s.substr(slash + 1));
            if (den == 0) fail();
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t frac_len = s.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+") fail();
            BigInt num = detail_rational::parse_decimal_int(digits);
            BigInt den = 1;
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rational(num, den);
        }
        return Rational(detail_rational::parse_decimal_int(s));
    } catch (const std::exception&) {
        fail();
    }
    return Rational(0); // unreachable
}

inline Rational pow_int(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    bool neg = e < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational acc(1), b = base;
    while (n) {
        if (n & 1ul) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (neg) {
        if (acc == 0) throw domain_error("pow_int: zero base with negative exponent");
        return Rational(1) / acc;
    }
    return acc;
}

inline std::optional<BigInt> exact_sqrt(const BigInt& v) {
    if (v < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(v);
    if (r * r == v) return r;
    return std::nullopt;
}

inline std::optional<Rational> exact_sqrt(const Rational& v) {
    auto n = exact_sqrt(numerator(v));
    auto d = exact_sqrt(denominator(v));
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

inline std::optional<BigInt> exact_nth_root(const BigInt& v, unsigned n) {
    if (n == 0) return std::nullopt;
    if (n == 1) return v;
    if (v < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = exact_nth_root(-v, n);
        if (!r) return std::nullopt;
        return -*r;
    }
    if (v == 0 || v == 1) return v;
    BigInt lo = 1, hi = v;
    while (lo <= hi) {
        BigInt mid = (lo + hi) / 2;
        BigInt p = boost::multiprecision::pow(mid, n);
        if (p == v) return mid;
        if (p < v)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return std::nullopt;
}

inline std::optional<Rational> exact_nth_root(const Rational& v, unsigned n) {
    auto num = exact_nth_root(numerator(v), n);
    auto den = exact_nth_root(denominator(v), n);
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

} // namespace qlt

#endif
