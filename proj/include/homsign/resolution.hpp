#pragma once

// Geometric resolution of a finite set: squarefree q(U), q~(U) invertible
// mod q, and w_1..w_n; the points are (w_k(u) / q~(u))_k over the roots u of q.

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "quotient.hpp"

namespace homsign {

struct GeometricResolution {
    QPoly q;
    QPoly qtilde;
    std::vector<QPoly> w;

    std::size_t dim() const { return w.size(); }
    /// Number of (complex) points; 0 for the empty set (q constant).
    int degree() const { return q.degree() < 1 ? 0 : q.degree(); }
    bool empty() const { return degree() == 0; }

    friend bool operator==(const GeometricResolution& a, const GeometricResolution& b) {
        return a.q == b.q && a.qtilde == b.qtilde && a.w == b.w;
    }
};

inline GeometricResolution empty_resolution(std::size_t n) {
    return {QPoly{Rational(1)}, QPoly{Rational(1)}, std::vector<QPoly>(n)};
}

/// Monic q; q~ and w reduced mod q with q~ made monic-free of scaling.
inline GeometricResolution normalize(GeometricResolution r) {
    if (r.empty()) return empty_resolution(r.dim());
    r.q = monic(r.q);
    r.qtilde = rem(r.qtilde, r.q);
    for (auto& w : r.w) w = rem(w, r.q);
    return r;
}

/// v_k = w_k / q~ mod q.
inline std::vector<QPoly> parametrization(const GeometricResolution& r) {
    if (r.empty()) return std::vector<QPoly>(r.dim());
    auto ring = make_quotient_ring(r.q);
    QuotientElement inv = QuotientElement(ring, r.qtilde).inverse();
    std::vector<QPoly> v;
    for (const auto& w : r.w) v.push_back((QuotientElement(ring, w) * inv).rep());
    return v;
}

/// Structural validity: q squarefree, q~ invertible mod q.
inline bool is_valid(const GeometricResolution& r) {
    if (r.empty()) return true;
    if (!is_squarefree(r.q)) return false;
    return gcd(r.q, r.qtilde).degree() == 0;
}

/// Union of two resolutions whose q are coprime.
inline GeometricResolution merge(const GeometricResolution& a, const GeometricResolution& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("merging resolutions of different dimension");
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (gcd(a.q, b.q).degree() > 0) throw BadAlpha("linear form does not separate merged sets");
    GeometricResolution r;
    r.q = a.q * b.q;
    r.qtilde = a.qtilde * b.q + b.qtilde * a.q;
    for (std::size_t k = 0; k < a.dim(); ++k) r.w.push_back(a.w[k] * b.q + b.w[k] * a.q);
    return normalize(r);
}

/// Prepends constant coordinates.
inline GeometricResolution prefix(const GeometricResolution& r, const std::vector<Rational>& values) {
    GeometricResolution out = r;
    std::vector<QPoly> w(values.size());
    if (!r.empty())
        for (std::size_t i = 0; i < values.size(); ++i) w[i] = rem(r.qtilde * values[i], r.q);
    w.insert(w.end(), r.w.begin(), r.w.end());
    out.w = std::move(w);
    return out;
}

/// Image of the points under x -> M x.
inline GeometricResolution map_linear(const GeometricResolution& r, const QMatrix& m) {
    GeometricResolution out = r;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        QPoly acc;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) acc += r.w[j] * m(i, j);
        out.w[i] = std::move(acc);
    }
    return out;
}

/// Resolution of the roots of h placed on the last coordinate, with the
/// given constant prefix; q is the squarefree part of h.
inline GeometricResolution univariate_resolution(const QPoly& h, const std::vector<Rational>& prefix_values) {
    const std::size_t n = prefix_values.size() + 1;
    if (h.degree() < 1) return empty_resolution(n);
    GeometricResolution r;
    r.q = squarefree_part(h);
    r.qtilde = QPoly{Rational(1)};
    for (const auto& v : prefix_values) r.w.push_back(QPoly{v});
    r.w.push_back(r.q.degree() == 1 ? QPoly{-r.q[0]} : variable_poly());
    return r;
}

/// Single rational point.
inline GeometricResolution point_resolution(const std::vector<Rational>& p) {
    GeometricResolution r;
    r.q = variable_poly();
    r.qtilde = QPoly{Rational(1)};
    for (const auto& v : p) r.w.push_back(QPoly{v});
    return r;
}

}  // namespace homsign
