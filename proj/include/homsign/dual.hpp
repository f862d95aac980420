#pragma once

// First-order jets: value + sum_k d_k * eps_k with eps_j * eps_k = 0.
// Used to carry the expansion modulo (y - alpha)^2 of the linear form
// l(x, y) = sum_k y_k x_k through characteristic polynomial computations.

#include <cstddef>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace homsign {

template <class C>
struct Dual {
    C value;
    std::vector<C> d;

    Dual() = default;
    Dual(C v, std::vector<C> tangent) : value(std::move(v)), d(std::move(tangent)) {}

    Dual& operator+=(const Dual& o) {
        value += o.value;
        for (std::size_t k = 0; k < d.size(); ++k) d[k] += o.d[k];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        value -= o.value;
        for (std::size_t k = 0; k < d.size(); ++k) d[k] -= o.d[k];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (std::size_t k = 0; k < d.size(); ++k) {
            C t = value * o.d[k];
            t += d[k] * o.value;
            d[k] = std::move(t);
        }
        value *= o.value;
        return *this;
    }
    Dual& operator*=(const Rational& s) {
        scale_by(value, s);
        for (auto& x : d) scale_by(x, s);
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator-(Dual a) {
        a.value = -a.value;
        for (auto& x : a.d) x = -x;
        return a;
    }
    friend bool operator==(const Dual& a, const Dual& b) { return a.value == b.value && a.d == b.d; }
};

template <class C>
Dual<C> zero_like(const Dual<C>& x) {
    return Dual<C>(zero_like(x.value), std::vector<C>(x.d.size(), zero_like(x.value)));
}
template <class C>
Dual<C> one_like(const Dual<C>& x) {
    return Dual<C>(one_like(x.value), std::vector<C>(x.d.size(), zero_like(x.value)));
}
template <class C>
Dual<C> from_rational(const Dual<C>& x, const Rational& c) {
    return Dual<C>(from_rational(x.value, c), std::vector<C>(x.d.size(), zero_like(x.value)));
}
template <class C>
void scale_by(Dual<C>& x, const Rational& s) {
    x *= s;
}
template <class C>
bool is_zero(const Dual<C>& x) {
    if (!is_zero(x.value)) return false;
    for (const auto& v : x.d)
        if (!is_zero(v)) return false;
    return true;
}

}  // namespace homsign
