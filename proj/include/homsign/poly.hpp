#pragma once

// Dense univariate polynomials. Poly<R> works over any commutative ring that
// provides the zero_like/one_like/from_rational/is_zero hooks; the Euclidean
// algorithms at the bottom of the file are specific to QPoly = Poly<Rational>.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace homsign {

template <class R>
class Poly {
public:
    using coeff_type = R;

    Poly() = default;
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

    static Poly monomial(const R& c, std::size_t k) {
        if (is_zero(c)) return {};
        std::vector<R> v(k + 1, zero_like(c));
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    bool empty() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& operator[](std::size_t i) const { return c_[i]; }
    const R& leading() const { return c_.back(); }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_like(o.c_.back()));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_like(o.c_.back()));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const R& s) {
        for (auto& c : c_) c *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend Poly operator*(Poly a, const R& s) { return a *= s; }
    friend Poly operator*(const R& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<R> out(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Horner evaluation at a point of any ring that accepts R coefficients.
    template <class T>
    T operator()(const T& x) const {
        if (c_.empty()) return zero_like(x);
        T acc = lift(x, c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            acc *= x;
            acc += lift(x, c_[i]);
        }
        return acc;
    }

private:
    template <class T>
    static T lift(const T& like, const R& c) {
        if constexpr (std::is_same_v<T, R>) {
            (void)like;
            return c;
        } else {
            return from_rational(like, c);
        }
    }

    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

    std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
    return p.empty();
}

template <class R>
Poly<R> derivative(const Poly<R>& p) {
    if (p.degree() < 1) return {};
    std::vector<R> out;
    out.reserve(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        R c = p[i];
        c *= from_rational(c, Rational(static_cast<long>(i)));
        out.push_back(std::move(c));
    }
    return Poly<R>(std::move(out));
}

using QPoly = Poly<Rational>;

// QPoly doubles as a coefficient ring (slp evaluation over Q[U]).
inline QPoly zero_like(const QPoly&) { return {}; }
inline QPoly one_like(const QPoly&) { return QPoly{Rational(1)}; }
inline QPoly from_rational(const QPoly&, const Rational& c) { return QPoly{c}; }

inline QPoly variable_poly() { return QPoly{Rational(0), Rational(1)}; }

inline QPoly poly_from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs) v.emplace_back(c);
    return QPoly(std::move(v));
}

inline QPoly monic(const QPoly& p) {
    if (p.empty()) return p;
    Rational inv = 1 / p.leading();
    return p * inv;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {QPoly{}, a};
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    std::vector<Rational> q(a.degree() - db + 1);
    Rational inv = 1 / b.leading();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rational f = r[k + db] * inv;
        if (f != 0) {
            for (int j = 0; j <= db; ++j) r[k + j] -= f * b[j];
        }
        q[k] = f;
    }
    r.resize(db);
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly rem(const QPoly& a, const QPoly& b) { return divrem(a, b).second; }

inline QPoly exact_div(const QPoly& a, const QPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.empty()) throw InexactDivision();
    return q;
}

inline bool divides(const QPoly& d, const QPoly& a) { return rem(a, d).empty(); }

// Integer-coefficient helpers for fraction-free remainder sequences.
namespace detail {

using ZVec = std::vector<Integer>;

inline ZVec primitive_integer(const QPoly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZVec z;
    z.reserve(p.size());
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        z.push_back(std::move(v));
    }
    if (g > 1)
        for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return z;
}

inline void trim(ZVec& z) {
    while (!z.empty() && z.back() == 0) z.pop_back();
}

// Divides by the positive content.
inline void make_primitive(ZVec& z) {
    Integer g = 0;
    for (const auto& v : z) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b; a is overwritten.
inline void prem(ZVec& a, const ZVec& b) {
    const std::size_t db = b.size() - 1;
    const Integer& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        Integer la = a.back();
        for (auto& v : a) v *= lb;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
        trim(a);
    }
}

inline QPoly to_qpoly(const ZVec& z) {
    std::vector<Rational> v;
    v.reserve(z.size());
    for (const auto& c : z) v.emplace_back(c);
    return QPoly(std::move(v));
}

}  // namespace detail

/// Monic gcd via the primitive polynomial remainder sequence.
inline QPoly gcd(const QPoly& a, const QPoly& b) {
    if (a.empty()) return monic(b);
    if (b.empty()) return monic(a);
    detail::ZVec x = detail::primitive_integer(a);
    detail::ZVec y = detail::primitive_integer(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        if (y.size() == 1) return QPoly{Rational(1)};
        detail::prem(x, y);
        detail::make_primitive(x);
        std::swap(x, y);
    }
    return monic(detail::to_qpoly(x));
}

struct XgcdResult {
    QPoly g;  // monic
    QPoly s;
    QPoly t;  // s*a + t*b = g
};

inline XgcdResult xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly s0{Rational(1)}, s1{};
    QPoly t0{}, t1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly s2 = s0 - q * s1;
        QPoly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

inline QPoly squarefree_part(const QPoly& a) {
    if (a.empty()) throw std::domain_error("squarefree_part of zero");
    return monic(exact_div(a, gcd(a, derivative(a))));
}

inline bool is_squarefree(const QPoly& a) { return gcd(a, derivative(a)).degree() == 0; }

/// p(inner(U)).
inline QPoly compose(const QPoly& p, const QPoly& inner) {
    QPoly acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * inner + QPoly{p[i]};
    return acc;
}

inline QPoly pow(const QPoly& p, unsigned e) {
    QPoly r{Rational(1)};
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

/// Exact value at a rational point.
inline Rational evaluate(const QPoly& p, const Rational& x) { return p(x); }

inline std::string to_string(const QPoly& p, const std::string& var = "U") {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << p[i].get_str() << ")";
        if (i > 0) os << "*" << var << "^" << i;
    }
    return os.str();
}

}  // namespace homsign
