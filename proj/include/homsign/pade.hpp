#pragma once

// Rational reconstruction of truncated series in u = t - 1.

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "series.hpp"

namespace homsign {

struct Fraction {
    QPoly num;
    QPoly den;
};

/// p / q with deg p <= num_deg, deg q <= den_deg, q(0) != 0 and
/// p / q = s mod u^N, all polynomials in u. Denominator made monic.
inline Fraction pade_reconstruct_u(const QSeries& s, int num_deg, int den_deg) {
    const std::size_t n = s.order();
    if (static_cast<long>(n) < static_cast<long>(num_deg) + den_deg + 1)
        throw std::invalid_argument("series order too small for the degree bounds");
    QPoly r0 = QPoly::monomial(Rational(1), n), r1 = to_poly(s);
    QPoly t0{}, t1{Rational(1)};
    while (r1.degree() > num_deg) {
        auto [q, r] = divrem(r0, r1);
        QPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1.degree() > den_deg || t1[0] == 0) throw NoReconstruction();
    QPoly g = gcd(r1, t1);
    if (g.degree() > 0) throw NoReconstruction();
    Rational inv = 1 / t1.leading();
    return {r1 * inv, t1 * inv};
}

/// Polynomial in t from a polynomial in u = t - 1.
inline QPoly u_to_t(const QPoly& p) { return compose(p, QPoly{Rational(-1), Rational(1)}); }
/// Polynomial in u = t - 1 from a polynomial in t.
inline QPoly t_to_u(const QPoly& p) { return compose(p, QPoly{Rational(1), Rational(1)}); }

/// Same as pade_reconstruct_u with the result expressed in t; denominator monic.
inline Fraction pade_reconstruct(const QSeries& s, int num_deg, int den_deg) {
    Fraction f = pade_reconstruct_u(s, num_deg, den_deg);
    QPoly num = u_to_t(f.num), den = u_to_t(f.den);
    Rational inv = 1 / den.leading();
    return {num * inv, den * inv};
}

inline QPoly lcm(const QPoly& a, const QPoly& b) { return monic(exact_div(a * b, gcd(a, b))); }

struct CommonDenominator {
    std::vector<QPoly> numerators;
    QPoly denominator;  // monic
};

/// Brings p_i / q_i to the monic lcm of the q_i, then removes any factor
/// common to the denominator and all numerators.
inline CommonDenominator common_denominator(const std::vector<Fraction>& fractions) {
    QPoly l{Rational(1)};
    for (const auto& f : fractions) {
        if (f.den.empty()) throw std::domain_error("zero denominator");
        l = lcm(l, f.den);
    }
    CommonDenominator out;
    QPoly g = l;
    for (const auto& f : fractions) {
        out.numerators.push_back(f.num * exact_div(l, f.den));
        g = gcd(g, out.numerators.back());
    }
    if (g.degree() > 0) {
        l = exact_div(l, g);
        for (auto& p : out.numerators) p = exact_div(p, g);
    }
    Rational inv = 1 / l.leading();
    for (auto& p : out.numerators) p *= inv;
    out.denominator = l * inv;
    return out;
}

/// Reconstructs a family of series sharing one denominator of degree at most
/// `bound`, numerators also of degree at most `bound`. Works in u; the
/// denominator is grown only when the current one fails to clear a series.
/// Requires order >= 2 * bound + 1. Returns numerators and denominator in u.
inline CommonDenominator reconstruct_family_u(const std::vector<QSeries>& family, int bound) {
    QPoly l{Rational(1)};
    auto cleared = [&](const QSeries& s) { return to_poly(s * series_from_poly(l, s.order())); };
    for (const auto& s : family) {
        if (cleared(s).degree() <= bound) continue;
        Fraction f = pade_reconstruct_u(s, bound, bound);
        l = lcm(l, f.den);
        if (l.degree() > bound) throw InternalError("common denominator exceeds the degree bound");
    }
    CommonDenominator out;
    for (const auto& s : family) {
        QPoly p = cleared(s);
        if (p.degree() > bound) throw InternalError("reconstructed numerator exceeds the degree bound");
        out.numerators.push_back(std::move(p));
    }
    out.denominator = l;
    return out;
}

}  // namespace homsign
