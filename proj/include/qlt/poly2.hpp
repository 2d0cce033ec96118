#ifndef QLT_POLY2_HPP
#define QLT_POLY2_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "qlt/context.hpp"

namespace qlt {

// Bivariate polynomial with exact coefficient map keyed by (deg_x, deg_y).
// Zero coefficients are never stored.
template <class S>
class QPoly2 {
  public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, S>;

    QPoly2() = default;

    static QPoly2 constant(const S& c) {
        QPoly2 p;
        p.add_term(0, 0, c);
        return p;
    }
    static QPoly2 monomial(int i, int j, const S& c) {
        QPoly2 p;
        p.add_term(i, j, c);
        return p;
    }

    void add_term(int i, int j, const S& c) {
        if (c == scalar_traits<S>::from_long(0)) return;
        auto key = Key{i, j};
        auto it = coeffs_.find(key);
        if (it == coeffs_.end()) {
            coeffs_.emplace(key, c);
        } else {
            it->second = it->second + c;
            if (it->second == scalar_traits<S>::from_long(0)) coeffs_.erase(it);
        }
    }

    const Map& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    S coeff(int i, int j) const {
        auto it = coeffs_.find(Key{i, j});
        return it == coeffs_.end() ? scalar_traits<S>::from_long(0) : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (auto& [k, c] : coeffs_) d = std::max(d, k.first + k.second);
        return d;
    }

    QPoly2 operator+(const QPoly2& o) const {
        QPoly2 r = *this;
        for (auto& [k, c] : o.coeffs_) r.add_term(k.first, k.second, c);
        return r;
    }
    QPoly2 operator-(const QPoly2& o) const {
        QPoly2 r = *this;
        for (auto& [k, c] : o.coeffs_) r.add_term(k.first, k.second, -c);
        return r;
    }
    QPoly2 operator*(const QPoly2& o) const {
        QPoly2 r;
        for (auto& [ka, ca] : coeffs_)
            for (auto& [kb, cb] : o.coeffs_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    QPoly2 operator*(const S& c) const {
        QPoly2 r;
        for (auto& [k, v] : coeffs_) r.add_term(k.first, k.second, v * c);
        return r;
    }
    bool operator==(const QPoly2& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const QPoly2& o) const { return !(*this == o); }

    // p(alpha*x, beta*y)
    QPoly2 scale_args(const S& alpha, const S& beta) const {
        QPoly2 r;
        for (auto& [k, v] : coeffs_) r.add_term(k.first, k.second, v * pow_int<S>(alpha, k.first) * pow_int<S>(beta, k.second));
        return r;
    }

    QPoly2 swap_vars() const {
        QPoly2 r;
        for (auto& [k, v] : coeffs_) r.add_term(k.second, k.first, v);
        return r;
    }

    QPoly2 truncate_total_degree(int n) const {
        QPoly2 r;
        for (auto& [k, v] : coeffs_)
            if (k.first + k.second <= n) r.add_term(k.first, k.second, v);
        return r;
    }

    S eval(const S& x, const S& y) const {
        S acc = scalar_traits<S>::from_long(0);
        for (auto& [k, v] : coeffs_) acc = acc + v * pow_int<S>(x, k.first) * pow_int<S>(y, k.second);
        return acc;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, v] : coeffs_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << scalar_traits<S>::str(v) << ")";
            if (k.first) os << "*x^" << k.first;
            if (k.second) os << "*y^" << k.second;
        }
        return os.str();
    }

  private:
    Map coeffs_;
};

} // namespace qlt

#endif
