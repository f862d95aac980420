#pragma once

// Exact rationals over GMP. Every value produced by arithmetic is canonical
// (gcd(num, den) = 1, den > 0); values built from raw parts go through
// make_rational().

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace homsign {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

/// Parses "p" or "p/q" with optional leading sign.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }
inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline int sign(const Rational& r) { return sgn(r); }

// Ring-generic hooks. Every coefficient ring used by the templates in this
// library provides these four functions, found by ordinary lookup or ADL.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational from_rational(const Rational&, const Rational& c) { return c; }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Multiplication by a rational scalar, specialised per ring where cheaper.
template <class T>
void scale_by(T& x, const Rational& s) {
    x *= from_rational(x, s);
}
inline void scale_by(Rational& x, const Rational& s) { x *= s; }

inline Rational pow(const Rational& base, unsigned exp) {
    Rational result(1);
    Rational b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        exp >>= 1;
        if (exp != 0) b *= b;
    }
    return result;
}

inline Rational binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

}  // namespace homsign
