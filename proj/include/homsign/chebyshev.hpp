#pragma once

#include <stdexcept>

#include "poly.hpp"

namespace homsign {

/// T_k by the three-term recurrence; any k >= 0.
inline QPoly chebyshev_poly(int k) {
    if (k < 0) throw std::invalid_argument("negative Chebyshev index");
    QPoly prev{Rational(1)};
    if (k == 0) return prev;
    QPoly cur = variable_poly();
    const QPoly two_x = QPoly{Rational(0), Rational(2)};
    for (int i = 1; i < k; ++i) {
        QPoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// T_d for the even degrees used by the Chebyshev start systems.
inline QPoly chebyshev(int d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("Chebyshev degree must be even and at least 2");
    return chebyshev_poly(d);
}

/// Factors of T_d' on which T_d = -1 and T_d = +1 respectively.
inline QPoly chebyshev_minus_factor(int d) { return monic(chebyshev_poly(d / 2)); }
inline QPoly chebyshev_plus_factor(int d) {
    return monic(exact_div(derivative(chebyshev(d)), chebyshev_poly(d / 2)));
}

}  // namespace homsign
