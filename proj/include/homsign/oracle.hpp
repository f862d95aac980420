#pragma once

// Brute-force checks used by the tests and by --verify: grid sampling of
// sign vectors, a second sign-determination path based on Descartes'
// rule and interval refinement, and a dense resultant for planar systems.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "interval.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "resolution.hpp"
#include "signs.hpp"
#include "slp.hpp"
#include "symmetric.hpp"

namespace homsign {

/// The two sign-determination paths disagree.
struct Disagreement : std::logic_error {
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------- grid

struct GridReport {
    Rational step;
    Rational bound;  // box [-bound, bound]^n
    std::map<std::vector<int>, std::vector<Rational>> vectors;  // sign vector -> first node realizing it
};

inline GridReport grid_feasible(const Slp& f, const Rational& bound, const Rational& step) {
    if (f.num_inputs > 3) throw std::invalid_argument("grid oracle is limited to three variables");
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    GridReport rep{step, bound, {}};
    const std::size_t n = f.num_inputs;
    if (bound < 0) return rep;
    std::vector<Rational> axis;
    for (Rational x = -bound; x <= bound; x += step) axis.push_back(x);
    std::vector<std::size_t> idx(n, 0);
    std::vector<Rational> pt(n);
    for (;;) {
        for (std::size_t k = 0; k < n; ++k) pt[k] = axis[idx[k]];
        std::vector<int> s;
        for (const auto& v : eval(f, pt, Rational(0))) s.push_back(sgn(v));
        rep.vectors.emplace(std::move(s), pt);
        std::size_t k = 0;
        while (k < n && ++idx[k] == axis.size()) idx[k++] = 0;
        if (k == n) break;
    }
    return rep;
}

// ---------------------------------------------------------------- Descartes path

namespace detail {

/// Sign variations of the coefficients of (1 + y)^d q((a + b y) / (1 + y)),
/// an upper bound on the number of roots in (a, b) with matching parity.
inline int descartes_count(const QPoly& q, const Rational& a, const Rational& b) {
    const int d = q.degree();
    const QPoly num{a, b}, den{Rational(1), Rational(1)};
    std::vector<QPoly> num_pow{QPoly{Rational(1)}}, den_pow{QPoly{Rational(1)}};
    for (int i = 1; i <= d; ++i) {
        num_pow.push_back(num_pow.back() * num);
        den_pow.push_back(den_pow.back() * den);
    }
    QPoly t;
    for (int i = 0; i <= d; ++i)
        if (q[static_cast<std::size_t>(i)] != 0) t += num_pow[i] * den_pow[d - i] * q[static_cast<std::size_t>(i)];
    int count = 0, last = 0;
    for (const auto& c : t.coeffs()) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace detail

/// Real roots of a squarefree q by Descartes bisection. Exact rational
/// roots met at split points come back as degenerate intervals and are
/// divided out; open intervals never end at a root of q.
inline std::vector<Interval> descartes_isolate(const QPoly& q) {
    std::vector<Interval> out, open;
    if (q.degree() < 1) return out;
    QPoly cur = q;
    const Rational B = root_bound(q);
    std::vector<Interval> stack{{-B, B}};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        const int c = detail::descartes_count(cur, iv.lo, iv.hi);
        if (c == 0) continue;
        if (c == 1) {
            open.push_back(iv);
            continue;
        }
        const Rational mid = iv.mid();
        if (sgn(cur(mid)) == 0) {
            out.push_back({mid, mid});
            cur = exact_div(cur, QPoly{Rational(-mid), Rational(1)});
        }
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    for (Interval iv : open) {
        while (sgn(q(iv.lo)) == 0 || sgn(q(iv.hi)) == 0) {
            const Rational mid = iv.mid();
            if (sgn(cur(mid)) == 0) {
                iv = {mid, mid};
                break;
            }
            if (sgn(cur(mid)) == sgn(cur(iv.lo))) iv.lo = mid;
            else iv.hi = mid;
        }
        out.push_back(iv);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return out;
}

/// Sign of g at the unique root of q in iv, by interval refinement; the
/// zero case is decided through gcd(q, g).
inline int sign_by_refinement(const QPoly& q, const QPoly& g, Interval iv) {
    if (iv.lo == iv.hi) return sgn(g(iv.lo));
    const QPoly h = gcd(q, rem(g, q));
    if (h.degree() >= 1 && sgn(h(iv.lo)) * sgn(h(iv.hi)) < 0) return 0;
    const int slo = sgn(q(iv.lo));
    for (;;) {
        const int s = evaluate(g, iv).sign();
        if (s != 0) return s;
        const Rational mid = iv.mid();
        const int sm = sgn(q(mid));
        if (sm == 0) return sgn(g(mid));
        if (sm == slo) iv.lo = mid;
        else iv.hi = mid;
    }
}

/// Sign vectors at the real roots of r computed without Sturm sequences,
/// compared against the main path; throws Disagreement on any mismatch.
inline std::vector<std::vector<int>> verify_point_signs(const GeometricResolution& r, const Slp& f) {
    std::vector<std::vector<int>> out;
    if (r.empty()) return out;
    const auto roots = descartes_isolate(r.q);
    const auto residues = compose_mod(f, r);
    for (const auto& iv : roots) {
        std::vector<int> s;
        for (const auto& g : residues) s.push_back(sign_by_refinement(r.q, g, iv));
        out.push_back(std::move(s));
    }
    const auto main = resolution_signs(f, r);
    if (main.size() != out.size()) throw Disagreement("real root counts differ");
    for (std::size_t j = 0; j < out.size(); ++j)
        if (main[j].signs != out[j]) throw Disagreement("sign vectors differ at root " + std::to_string(j));
    return out;
}

// ---------------------------------------------------------------- resultant

inline Poly<QPoly> zero_like(const Poly<QPoly>&) { return {}; }
inline Poly<QPoly> one_like(const Poly<QPoly>&) { return Poly<QPoly>{QPoly{Rational(1)}}; }
inline Poly<QPoly> from_rational(const Poly<QPoly>&, const Rational& c) { return Poly<QPoly>{QPoly{c}}; }

/// Sylvester resultant of a and b in y, both with coefficients in Q[U].
inline QPoly sylvester_resultant(const Poly<QPoly>& a, const Poly<QPoly>& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return {};
    if (m == 0) return pow(a[0], static_cast<unsigned>(n));
    if (n == 0) return pow(b[0], static_cast<unsigned>(m));
    const std::size_t N = static_cast<std::size_t>(m + n);
    Matrix<QPoly> s(N, N, QPoly{});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = a[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = b[static_cast<std::size_t>(n - j)];
    return determinant(s);
}

/// For a planar system f1 = f2 = 0 and the form U = a1 x1 + a2 x2, the
/// resultant eliminating x2 after x1 = (U - a2 x2) / a1. Its roots include
/// the U-values of every isolated solution.
inline QPoly planar_resultant(const Slp& f, const std::vector<Rational>& alpha) {
    if (f.num_inputs != 2 || f.num_outputs() != 2) throw std::invalid_argument("planar_resultant needs two equations in two variables");
    using PP = Poly<QPoly>;
    const PP x2{QPoly{}, QPoly{Rational(1)}};
    const PP x1{QPoly{Rational(0), Rational(1 / alpha[0])}, QPoly{Rational(-alpha[1] / alpha[0])}};
    const auto v = eval(f, std::vector<PP>{x1, x2}, PP{});
    return sylvester_resultant(v[0], v[1]);
}

/// Characteristic polynomial of sum alpha_k x_k over the points of r, with
/// multiplicity one per root of q.
inline QPoly project_resolution(const GeometricResolution& r, const std::vector<Rational>& alpha) {
    if (r.empty()) return QPoly{Rational(1)};
    const std::size_t deg = static_cast<std::size_t>(r.degree());
    const auto v = parametrization(r);
    QPoly e;
    for (std::size_t k = 0; k < v.size(); ++k) e += v[k] * alpha[k];
    const auto tr_u = power_sums(monic(r.q), deg);  // Tr(U^i), i < deg
    std::vector<Rational> p(deg + 1);
    QPoly power{Rational(1)};
    for (std::size_t j = 1; j <= deg; ++j) {
        power = rem(power * e, r.q);
        for (std::size_t i = 0; i < power.size(); ++i) p[j] += power[i] * tr_u[i];
    }
    return poly_from_power_sums(p, deg, Rational(0));
}

}  // namespace homsign
