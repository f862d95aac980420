#pragma once

// Closed intervals with exact rational endpoints.

#include <algorithm>

#include "poly.hpp"
#include "rational.hpp"

namespace homsign {

struct Interval {
    Rational lo, hi;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    /// -1 or +1 when the sign is constant on the interval, 0 otherwise.
    int sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator+(const Interval& a, const Rational& c) { return {a.lo + c, a.hi + c}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

/// Horner enclosure of p over x.
inline Interval evaluate(const QPoly& p, const Interval& x) {
    if (p.empty()) return {Rational(0), Rational(0)};
    Interval acc{p.leading(), p.leading()};
    for (std::size_t i = p.size() - 1; i-- > 0;) acc = acc * x + p[i];
    return acc;
}

/// Rounds x to the nearest multiple of 2^-bits.
inline Rational round_dyadic(const Rational& x, unsigned bits) {
    Integer scale = 1;
    scale <<= bits;
    Rational y = x * Rational(scale) + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return make_rational(f, scale);
}

}  // namespace homsign
