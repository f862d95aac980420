#pragma once

// Truncated power series in (t - 1): element of C[[t-1]] / (t-1)^N.
// Index i holds the coefficient of (t-1)^i; the order N is carried by each
// value and binary operations truncate to the smaller order.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace homsign {

/// Numerators over the lcm of the denominators of v; returns the lcm.
inline Integer common_numerators(const std::vector<Rational>& v, std::vector<Integer>& out) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = l / v[i].get_den() * v[i].get_num();
    return l;
}

/// First n coefficients of a * b, convolved over a common denominator.
inline std::vector<Rational> truncated_product(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
    std::vector<Integer> ia, ib;
    const Integer den = common_numerators(a, ia) * common_numerators(b, ib);
    std::vector<Rational> out(n);
    Integer acc;
    for (std::size_t k = 0; k < n; ++k) {
        acc = 0;
        for (std::size_t i = 0; i <= k; ++i)
            if (ia[i] != 0 && ib[k - i] != 0) mpz_addmul(acc.get_mpz_t(), ia[i].get_mpz_t(), ib[k - i].get_mpz_t());
        if (acc == 0) continue;
        out[k] = Rational(acc, den);
        out[k].canonicalize();
    }
    return out;
}

template <class C>
std::vector<C> truncated_product(const std::vector<C>& a, const std::vector<C>& b, std::size_t n) {
    const std::size_t va = std::find_if(a.begin(), a.end(), [](const C& c) { return !is_zero(c); }) - a.begin();
    const std::size_t vb = std::find_if(b.begin(), b.end(), [](const C& c) { return !is_zero(c); }) - b.begin();
    std::vector<C> out(n, zero_like(a[0]));
    for (std::size_t i = va; i < n; ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = vb; i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

template <class C>
class Series {
public:
    using coeff_type = C;

    Series() = default;
    explicit Series(std::vector<C> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("series of order zero");
    }

    static Series constant(const C& value, std::size_t order) {
        std::vector<C> v(order, zero_like(value));
        v[0] = value;
        return Series(std::move(v));
    }

    /// The series of t = 1 + (t-1) over the coefficient ring of `like`.
    static Series t_variable(const C& like, std::size_t order) {
        std::vector<C> v(order, zero_like(like));
        v[0] = one_like(like);
        if (order > 1) v[1] = one_like(like);
        return Series(std::move(v));
    }

    std::size_t order() const { return c_.size(); }
    const C& operator[](std::size_t i) const { return c_[i]; }
    C& operator[](std::size_t i) { return c_[i]; }
    const std::vector<C>& coeffs() const { return c_; }

    /// Reduces or zero-pads to the given order.
    Series with_order(std::size_t n) const {
        std::vector<C> v(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(n, c_.size())));
        v.resize(n, zero_like(c_[0]));
        return Series(std::move(v));
    }

    /// Index of the first nonzero coefficient, or order() if none.
    std::size_t valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!is_zero(c_[i])) return i;
        return c_.size();
    }

    Series& operator+=(const Series& o) {
        shrink_to(o.order());
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Series& operator-=(const Series& o) {
        shrink_to(o.order());
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Series& operator*=(const C& s) {
        for (auto& c : c_) c *= s;
        return *this;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend Series operator*(Series a, const C& s) { return a *= s; }

    friend Series operator*(const Series& a, const Series& b) {
        return Series(truncated_product(a.c_, b.c_, std::min(a.order(), b.order())));
    }

    friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

private:
    void shrink_to(std::size_t n) {
        if (n < c_.size()) c_.resize(n, zero_like(c_[0]));
    }

    std::vector<C> c_;
};

template <class C>
Series<C> zero_like(const Series<C>& s) {
    return Series<C>::constant(zero_like(s[0]), s.order());
}
template <class C>
Series<C> one_like(const Series<C>& s) {
    return Series<C>::constant(one_like(s[0]), s.order());
}
template <class C>
Series<C> from_rational(const Series<C>& s, const Rational& c) {
    return Series<C>::constant(from_rational(s[0], c), s.order());
}
template <class C>
bool is_zero(const Series<C>& s) {
    return s.valuation() == s.order();
}

template <class C>
void scale_by(Series<C>& s, const Rational& c) {
    for (std::size_t i = 0; i < s.order(); ++i) scale_by(s[i], c);
}

using QSeries = Series<Rational>;

/// Interprets the coefficients as a polynomial in u = t - 1.
inline QPoly to_poly(const QSeries& s) { return QPoly(s.coeffs()); }

inline QSeries series_from_poly(const QPoly& p, std::size_t order) {
    std::vector<Rational> v(order);
    for (std::size_t i = 0; i < std::min(order, p.size()); ++i) v[i] = p[i];
    return QSeries(std::move(v));
}

}  // namespace homsign
