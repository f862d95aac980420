#pragma once

// Power sums and Newton identities.

#include <cstddef>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace homsign {

/// Power sums p_0..p_{count-1} of the roots of a monic polynomial.
inline std::vector<Rational> power_sums(const QPoly& monic_poly, std::size_t count) {
    const int m = monic_poly.degree();
    std::vector<Rational> p(count);
    if (count == 0) return p;
    p[0] = m;
    // c(i) is the coefficient of U^(m - i).
    auto c = [&](int i) { return monic_poly[static_cast<std::size_t>(m - i)]; };
    for (std::size_t j = 1; j < count; ++j) {
        Rational acc(0);
        const int jj = static_cast<int>(j);
        for (int i = 1; i <= std::min(jj - 1, m); ++i) acc += c(i) * p[j - i];
        if (jj <= m) acc += c(jj) * jj;
        p[j] = -acc;
    }
    return p;
}

/// The monic polynomial prod (U - r_i) of degree `degree` whose roots have
/// power sums p[1..degree] (p[0] ignored), over any ring admitting rational
/// scaling.
template <class R>
Poly<R> poly_from_power_sums(const std::vector<R>& p, std::size_t degree, const R& like) {
    std::vector<R> e(degree + 1, zero_like(like));
    e[0] = one_like(like);
    for (std::size_t j = 1; j <= degree; ++j) {
        R acc = zero_like(like);
        for (std::size_t i = 1; i <= j; ++i) {
            R term = e[j - i] * p[i];
            if (i % 2 == 1) acc += term;
            else acc -= term;
        }
        acc *= make_rational(1, static_cast<long>(j));
        e[j] = std::move(acc);
    }
    std::vector<R> coeffs(degree + 1, zero_like(like));
    for (std::size_t j = 0; j <= degree; ++j) {
        coeffs[degree - j] = e[j];
        if (j % 2 == 1) coeffs[degree - j] = -coeffs[degree - j];
    }
    return Poly<R>(std::move(coeffs));
}

}  // namespace homsign
