#pragma once

// Critical-point (Lagrange) systems and the two start-system families with
// explicitly known solutions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "chebyshev.hpp"
#include "dual.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "quotient.hpp"
#include "resolution.hpp"
#include "slp.hpp"
#include "symmetric.hpp"

namespace homsign {

// ---------------------------------------------------------------- helpers

/// All k-element subsets of {first, ..., last}, in lexicographic order.
inline std::vector<std::vector<int>> combinations(int first, int last, int k) {
    std::vector<std::vector<int>> out;
    const int n = last - first + 1;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<int> c;
        for (int i : idx) c.push_back(first + i);
        out.push_back(std::move(c));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline bool is_prime(long v) {
    if (v < 2) return false;
    for (long p = 2; p * p <= v; ++p)
        if (v % p == 0) return false;
    return true;
}

/// The first `count` primes greater than n.
inline std::vector<long> primes_greater_than(long n, std::size_t count) {
    std::vector<long> out;
    for (long v = n + 1; out.size() < count; ++v)
        if (is_prime(v)) out.push_back(v);
    return out;
}

/// Fixes the last input of a program to a constant.
inline Slp fix_last_input(const Slp& p, const Rational& value) {
    if (p.num_inputs == 0) throw std::invalid_argument("program has no inputs");
    SlpBuilder b(p.num_inputs - 1);
    std::vector<Node> args;
    for (std::size_t i = 0; i + 1 < p.num_inputs; ++i) args.push_back(b.input(i));
    args.push_back(b.constant(value));
    return b.finish(b.inline_slp(p, args));
}

// ---------------------------------------------------------------- Lagrange

enum class LagrangeCase { Single, Mid, Square };

/// Equations over (x_1..x_n, mu_1..mu_num_mu). In the mid case the first s
/// equations are the selected f and the remaining n - 1 are
/// sum_j mu_j df_j/dx_k for k = 2..n.
struct LagrangeSystem {
    std::vector<std::size_t> subset;
    LagrangeCase kind = LagrangeCase::Square;
    std::size_t n = 0;
    std::size_t s = 0;
    std::size_t num_mu = 0;
    Slp equations;
    std::vector<int> degrees;

    std::size_t num_equations() const { return equations.num_outputs(); }
    /// Dehomogenized in the chart mu_s = 1: inputs x, mu_1..mu_{s-1}.
    Slp chart() const { return num_mu == 0 ? equations : fix_last_input(equations, Rational(1)); }
    std::size_t chart_vars() const { return n + (num_mu == 0 ? 0 : num_mu - 1); }
};

inline int lagrange_mu_degree(const std::vector<int>& subset_degrees) {
    int d = 0;
    for (int x : subset_degrees) d = std::max(d, x);
    return std::max(1, d - 1);
}

inline LagrangeSystem build_lagrange(const Slp& f, const std::vector<std::size_t>& subset, const std::vector<int>& degrees) {
    LagrangeSystem sys;
    sys.subset = subset;
    sys.n = f.num_inputs;
    sys.s = subset.size();
    if (sys.s == 0) throw std::invalid_argument("empty subset");
    std::vector<int> sd;
    for (auto i : subset) sd.push_back(degrees.at(i));
    const int dmu = lagrange_mu_degree(sd);
    const std::size_t n = sys.n, s = sys.s;

    if (s >= n) {
        sys.kind = LagrangeCase::Square;
        sys.equations = select_outputs(f, subset);
        sys.degrees = sd;
        return sys;
    }
    SlpBuilder b(n + (s == 1 ? 0 : s));
    std::vector<Node> x;
    for (std::size_t k = 0; k < n; ++k) x.push_back(b.input(k));
    std::vector<Node> outs;
    std::vector<std::vector<Node>> grads;
    for (auto i : subset) {
        Slp fi = select_outputs(f, {i});
        outs.push_back(b.inline_slp(fi, x)[0]);
        grads.push_back(b.inline_slp(gradient(f, i), x));
    }
    sys.degrees = sd;
    if (s == 1) {
        sys.kind = LagrangeCase::Single;
        for (std::size_t k = 1; k < n; ++k) {
            outs.push_back(grads[0][k]);
            sys.degrees.push_back(dmu);
        }
    } else {
        sys.kind = LagrangeCase::Mid;
        sys.num_mu = s;
        for (std::size_t k = 1; k < n; ++k) {
            std::vector<Node> terms;
            for (std::size_t j = 0; j < s; ++j) terms.push_back(b.mul(b.input(n + j), grads[j][k]));
            outs.push_back(b.sum(terms));
            sys.degrees.push_back(dmu);
        }
    }
    sys.equations = b.finish(outs);
    return sys;
}

// ---------------------------------------------------------------- Bezout

struct BezoutData {
    std::uint64_t D = 0;
    std::uint64_t precision = 0;  // 2 * n * D + 1
};

/// Multihomogeneous bound for s equations of degrees d_1..d_s in x followed by
/// the bilinear-in-mu equations of degrees d_{s+1}..d_r (mid case), or the
/// plain product of the degrees otherwise.
inline BezoutData bezout_count(std::size_t s, std::size_t n, const std::vector<int>& degrees) {
    BezoutData b;
    const bool mid = s >= 2 && s < n;
    if (!mid) {
        std::uint64_t p = 1;
        for (int d : degrees) p *= static_cast<std::uint64_t>(d);
        b.D = p;
    } else {
        if (degrees.size() != s + n - 1) throw std::invalid_argument("degree vector length must be s + n - 1");
        std::uint64_t head = 1;
        for (std::size_t i = 0; i < s; ++i) head *= static_cast<std::uint64_t>(degrees[i]);
        // Elementary symmetric polynomial of order n - s in the trailing degrees.
        std::vector<std::uint64_t> e(n - s + 1, 0);
        e[0] = 1;
        for (std::size_t i = s; i < degrees.size(); ++i)
            for (std::size_t k = n - s; k >= 1; --k) e[k] += e[k - 1] * static_cast<std::uint64_t>(degrees[i]);
        b.D = head * e[n - s];
    }
    b.precision = 2 * static_cast<std::uint64_t>(n) * b.D + 1;
    return b;
}

// ---------------------------------------------------------------- type 1

struct InitialSystemType1 {
    std::size_t s = 0, n = 0;
    std::vector<int> degrees;
    int d = 1;  // largest degree; spacing of the linear-form tables

    bool grid() const { return s == 1 || s >= n; }
    std::size_t num_mu() const { return grid() ? 0 : s; }
    std::size_t num_equations() const { return degrees.size(); }

    // Indices are 1-based: equation i, factor j, variable k.
    Rational phi_coeff(std::size_t i, int j, std::size_t k) const {
        return make_rational(1, static_cast<long>((i - s - 1) * d + j - 1 + k - s));
    }
    Rational phi_const(std::size_t i, int j) const {
        return make_rational(1, static_cast<long>((i - s - 1) * d + j - 1 + n + 1 - s));
    }
    Rational psi_coeff(std::size_t i, std::size_t k) const { return make_rational(1, static_cast<long>(i - s - 1 + k)); }
};

/// The start system and its program over (x, mu_1..mu_num_mu).
inline std::pair<InitialSystemType1, Slp> build_type1(std::size_t s, std::size_t n, const std::vector<int>& degrees) {
    InitialSystemType1 sys;
    sys.s = s;
    sys.n = n;
    sys.degrees = degrees;
    for (int x : degrees) {
        if (x < 1) throw std::invalid_argument("degrees must be positive");
        sys.d = std::max(sys.d, x);
    }
    const std::size_t r = degrees.size();
    if (sys.grid() ? r != n : r != s + n - 1)
        throw std::invalid_argument("degree vector does not match the system shape");
    SlpBuilder b(n + sys.num_mu());
    std::vector<Node> outs;
    if (sys.grid()) {
        for (std::size_t i = 1; i <= r; ++i) {
            std::vector<Node> fac;
            for (int j = 1; j <= degrees[i - 1]; ++j) fac.push_back(b.sub(b.input(i - 1), b.constant(j)));
            outs.push_back(b.product(fac));
        }
    } else {
        for (std::size_t i = 1; i <= s; ++i) {
            std::vector<Node> fac;
            for (int j = 1; j <= degrees[i - 1]; ++j) fac.push_back(b.sub(b.input(i - 1), b.constant(j)));
            outs.push_back(b.product(fac));
        }
        for (std::size_t i = s + 1; i <= r; ++i) {
            std::vector<Node> fac;
            for (int j = 1; j <= degrees[i - 1]; ++j) {
                std::vector<Node> terms;
                for (std::size_t k = s + 1; k <= n; ++k) terms.push_back(b.scale(sys.phi_coeff(i, j, k), b.input(k - 1)));
                terms.push_back(b.constant(sys.phi_const(i, j)));
                fac.push_back(b.sum(terms));
            }
            std::vector<Node> psi;
            for (std::size_t k = 1; k <= s; ++k) psi.push_back(b.scale(sys.psi_coeff(i, k), b.input(n + k - 1)));
            fac.push_back(b.sum(psi));
            outs.push_back(b.product(fac));
        }
    }
    return {sys, b.finish(outs)};
}

inline Slp type1_chart(const InitialSystemType1& sys, const Slp& g) {
    return sys.num_mu() == 0 ? g : fix_last_input(g, Rational(1));
}

namespace detail {

inline void grid_points(const std::vector<int>& degrees, std::size_t count, std::vector<std::vector<Rational>>& out) {
    std::vector<Rational> cur(count);
    std::vector<int> idx(count, 1);
    if (count == 0) {
        out.push_back({});
        return;
    }
    for (;;) {
        for (std::size_t i = 0; i < count; ++i) cur[i] = idx[i];
        out.push_back(cur);
        std::size_t i = 0;
        while (i < count && idx[i] == degrees[i]) idx[i++] = 1;
        if (i == count) break;
        ++idx[i];
    }
}

}  // namespace detail

/// Checks the start points: distinct x-projections, vanishing g and a
/// nonsingular Jacobian of the chart system at each point.
inline bool check_start_points(const Slp& chart, std::size_t nx, const std::vector<std::vector<Rational>>& pts) {
    std::vector<std::vector<Rational>> xs;
    for (const auto& p : pts) xs.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(nx));
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return false;
    const Slp fj = with_jacobian(chart);
    const std::size_t r = chart.num_outputs(), v = chart.num_inputs;
    if (r != v) return false;
    for (const auto& p : pts) {
        auto out = eval(fj, p, Rational(0));
        for (std::size_t i = 0; i < r; ++i)
            if (out[i] != 0) return false;
        QMatrix j(r, v, Rational(0));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t c = 0; c < v; ++c) j(a, c) = out[r + a * v + c];
        if (determinant(j) == 0) return false;
    }
    return true;
}

/// All start points in the chart coordinates (x, mu_1..mu_{s-1}); exactly D
/// of them, checked.
inline std::vector<std::vector<Rational>> enumerate_type1_solutions(const InitialSystemType1& sys, bool check = true) {
    std::vector<std::vector<Rational>> pts;
    const std::size_t s = sys.s, n = sys.n;
    if (sys.grid()) {
        detail::grid_points(sys.degrees, sys.degrees.size(), pts);
    } else {
        const std::size_t r = sys.degrees.size();
        std::vector<std::vector<Rational>> heads;
        detail::grid_points(sys.degrees, s, heads);
        for (const auto& E : combinations(static_cast<int>(s + 1), static_cast<int>(r), static_cast<int>(n - s))) {
            // mu from the psi factors of the equations outside E.
            std::vector<std::size_t> rest;
            for (std::size_t i = s + 1; i <= r; ++i)
                if (std::find(E.begin(), E.end(), static_cast<int>(i)) == E.end()) rest.push_back(i);
            std::vector<Rational> mu;
            if (s > 1) {
                QMatrix a(s - 1, s - 1, Rational(0));
                std::vector<Rational> rhs(s - 1);
                for (std::size_t row = 0; row < rest.size(); ++row) {
                    for (std::size_t k = 1; k < s; ++k) a(row, k - 1) = sys.psi_coeff(rest[row], k);
                    rhs[row] = -sys.psi_coeff(rest[row], s);
                }
                mu = solve(a, rhs);
            }
            // One phi factor per equation of E.
            std::vector<int> factor_degrees;
            for (int i : E) factor_degrees.push_back(sys.degrees[static_cast<std::size_t>(i) - 1]);
            std::vector<std::vector<Rational>> choices;
            detail::grid_points(factor_degrees, factor_degrees.size(), choices);
            for (const auto& js : choices) {
                QMatrix a(n - s, n - s, Rational(0));
                std::vector<Rational> rhs(n - s);
                for (std::size_t row = 0; row < E.size(); ++row) {
                    const auto i = static_cast<std::size_t>(E[row]);
                    const int j = static_cast<int>(js[row].get_num().get_si());
                    for (std::size_t k = s + 1; k <= n; ++k) a(row, k - s - 1) = sys.phi_coeff(i, j, k);
                    rhs[row] = -sys.phi_const(i, j);
                }
                const std::vector<Rational> tail = solve(a, rhs);
                for (const auto& h : heads) {
                    std::vector<Rational> p = h;
                    p.insert(p.end(), tail.begin(), tail.end());
                    p.insert(p.end(), mu.begin(), mu.end());
                    pts.push_back(std::move(p));
                }
            }
        }
    }
    const BezoutData bz = bezout_count(s, n, sys.degrees);
    if (pts.size() != bz.D) throw InternalError("type 1 start point count differs from the Bezout number");
    if (check) {
        auto [s2, g] = build_type1(s, n, sys.degrees);
        if (!check_start_points(type1_chart(s2, g), n, pts)) throw InternalError("type 1 start points violate property (H)");
    }
    return pts;
}

// ---------------------------------------------------------------- type 2

struct InitialSystemType2 {
    std::size_t s = 0, n = 0;
    int d = 2;
    std::vector<int> tau;             // +1 / -1 per equation
    std::vector<Rational> offsets;    // a_1 < ... < a_s

    std::size_t num_mu() const { return (s >= 2 && s < n) ? s : 0; }
    std::size_t num_equations() const { return s >= n ? s : s + n - 1; }
    /// A_{ik} = 1 / (a_i + k), 1-based.
    Rational A(std::size_t i, std::size_t k) const { return 1 / (offsets[i - 1] + static_cast<long>(k)); }
    std::vector<int> degrees() const {
        std::vector<int> v(s, d);
        if (s < n) v.resize(s + n - 1, d - 1);
        return v;
    }
    std::uint64_t bezout() const {
        std::uint64_t c = 1;
        const std::size_t sb = std::min(s, n);
        for (std::size_t i = 0; i < sb - 1; ++i) c = c * (n - 1 - i) / (i + 1);
        for (std::size_t i = 0; i < sb; ++i) c *= static_cast<std::uint64_t>(d);
        for (std::size_t i = sb; i < n; ++i) c *= static_cast<std::uint64_t>(d - 1);
        return c;
    }
};

/// Offsets j - 1 + shift with the smallest shift making a_s + n + 1 prime.
inline std::vector<Rational> default_type2_offsets(std::size_t s, std::size_t n) {
    long shift = 0;
    while (!is_prime(static_cast<long>(s) - 1 + shift + static_cast<long>(n) + 1)) ++shift;
    std::vector<Rational> a;
    for (std::size_t j = 0; j < s; ++j) a.emplace_back(static_cast<long>(j) + shift);
    return a;
}

/// Offsets q_{i_j} - n - 1 of the prime-indexed family, subset 0-based.
inline std::vector<Rational> indexed_type2_offsets(const std::vector<std::size_t>& subset, std::size_t n, std::size_t m) {
    const auto primes = primes_greater_than(static_cast<long>(n), m);
    std::vector<Rational> a;
    for (auto i : subset) a.emplace_back(primes.at(i) - static_cast<long>(n) - 1);
    return a;
}

inline std::pair<InitialSystemType2, Slp> build_type2(std::size_t s, std::size_t n, int d, const std::vector<int>& tau,
                                                      const std::vector<Rational>& offsets) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("type 2 degree must be even and at least 2");
    if (s == 0 || s > n) throw std::invalid_argument("type 2 needs 1 <= s <= n");
    if (tau.size() != s || offsets.size() != s) throw std::invalid_argument("type 2 sign/offset length mismatch");
    for (std::size_t j = 0; j < s; ++j) {
        if (offsets[j] < 0 || offsets[j].get_den() != 1) throw std::invalid_argument("type 2 offsets must be nonnegative integers");
        if (j > 0 && !(offsets[j - 1] < offsets[j])) throw std::invalid_argument("type 2 offsets must increase");
        if (tau[j] != 1 && tau[j] != -1) throw std::invalid_argument("type 2 signs must be +1 or -1");
    }
    if (!is_prime(offsets.back().get_num().get_si() + static_cast<long>(n) + 1))
        throw std::invalid_argument("type 2 offsets: a_s + n + 1 must be prime");
    InitialSystemType2 sys{s, n, d, tau, offsets};
    const QPoly T = chebyshev(d), dT = derivative(T);
    SlpBuilder b(n + sys.num_mu());
    std::vector<Node> t, dt;
    for (std::size_t k = 0; k < n; ++k) {
        t.push_back(b.poly(T, b.input(k)));
        dt.push_back(b.poly(dT, b.input(k)));
    }
    std::vector<Node> outs;
    for (std::size_t i = 1; i <= s; ++i) {
        std::vector<Node> terms{b.constant(Rational(static_cast<long>(n)) + sys.A(i, n + 1))};
        for (std::size_t k = 1; k <= n; ++k) terms.push_back(b.scale(sys.A(i, k), t[k - 1]));
        Node g = b.sum(terms);
        outs.push_back(tau[i - 1] > 0 ? g : b.neg(g));
    }
    if (s < n) {
        for (std::size_t k = 2; k <= n; ++k) {
            std::vector<Node> terms;
            for (std::size_t j = 1; j <= s; ++j) {
                Rational c = sys.A(j, k) * tau[j - 1];
                terms.push_back(sys.num_mu() == 0 ? b.constant(c) : b.scale(c, b.input(n + j - 1)));
            }
            outs.push_back(b.mul(dt[k - 1], b.sum(terms)));
        }
    }
    return {sys, b.finish(outs)};
}

inline Slp type2_chart(const InitialSystemType2& sys, const Slp& g) {
    return sys.num_mu() == 0 ? g : fix_last_input(g, Rational(1));
}

/// Resolution of the points of prod_k {u_k(x_k) = 0} associated with the
/// linear form sum alpha_k x_k, from power sums of the composed sum carried
/// to first order in the form's coefficients.
inline GeometricResolution composed_sum_resolution(const std::vector<QPoly>& factors, const std::vector<Rational>& alpha) {
    const std::size_t n = factors.size();
    std::size_t D = 1;
    for (const auto& u : factors) D *= static_cast<std::size_t>(u.degree());
    using D1 = Dual<Rational>;
    const D1 zero(Rational(0), std::vector<Rational>(n));
    // Exponential generating function of power sums, one factor at a time.
    std::vector<D1> egf(D + 1, zero);
    egf[0] = from_rational(zero, Rational(1));
    Integer fact = 1;
    std::vector<Rational> inv_fact(D + 1);
    for (std::size_t j = 0; j <= D; ++j) {
        if (j > 0) fact *= static_cast<unsigned long>(j);
        inv_fact[j] = Rational(1) / Rational(fact);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto p = power_sums(monic(factors[k]), D + 1);
        std::vector<Rational> tangent(n);
        tangent[k] = 1;
        const D1 y(alpha[k], tangent);
        std::vector<D1> term(D + 1, zero);
        D1 ypow = from_rational(zero, Rational(1));
        for (std::size_t j = 0; j <= D; ++j) {
            term[j] = ypow;
            term[j] *= p[j] * inv_fact[j];
            ypow *= y;
        }
        std::vector<D1> next(D + 1, zero);
        for (std::size_t a = 0; a <= D; ++a)
            for (std::size_t c = 0; a + c <= D; ++c) next[a + c] += egf[a] * term[c];
        egf = std::move(next);
    }
    std::vector<D1> sums(D + 1, zero);
    fact = 1;
    for (std::size_t j = 0; j <= D; ++j) {
        if (j > 0) fact *= static_cast<unsigned long>(j);
        sums[j] = egf[j];
        sums[j] *= Rational(fact);
    }
    const Poly<D1> P = poly_from_power_sums(sums, D, zero);
    GeometricResolution r;
    std::vector<Rational> qc;
    std::vector<std::vector<Rational>> wc(n);
    for (std::size_t h = 0; h <= D; ++h) {
        qc.push_back(P[h].value);
        for (std::size_t k = 0; k < n; ++k) wc[k].push_back(-P[h].d[k]);
    }
    r.q = QPoly(qc);
    if (!is_squarefree(r.q)) throw BadAlpha("linear form does not separate the start points");
    r.qtilde = derivative(r.q);
    for (auto& c : wc) r.w.push_back(QPoly(c));
    return r;
}

struct Type2Block {
    std::vector<int> in_b;      // 1-based coordinates with T'(x_k) = 0
    std::vector<int> e;         // value of T at those coordinates
    std::vector<Rational> c;    // T(x_k) = c_k on the other coordinates, aligned with `others`
    std::vector<int> others;
    GeometricResolution res;    // x coordinates
    std::vector<Rational> mu;   // mu_1..mu_{s-1} in the chart, empty without mu
};

struct Type2Resolution {
    std::vector<Type2Block> blocks;
    GeometricResolution merged;
};

inline Type2Resolution resolve_type2(const InitialSystemType2& sys, const std::vector<Rational>& alpha) {
    const std::size_t s = sys.s, n = sys.n;
    const int d = sys.d;
    const QPoly T = chebyshev(d);
    const QPoly minus = chebyshev_minus_factor(d), plus = chebyshev_plus_factor(d);
    Type2Resolution out;
    out.merged = empty_resolution(n);
    const int nb = s >= n ? 0 : static_cast<int>(n - s);
    for (const auto& B : combinations(2, static_cast<int>(n), nb)) {
        std::vector<int> others;
        for (int k = 1; k <= static_cast<int>(n); ++k)
            if (std::find(B.begin(), B.end(), k) == B.end()) others.push_back(k);
        std::vector<Rational> mu;
        if (sys.num_mu() > 0) {
            // Rows: coordinates k in {2..n} outside B.
            QMatrix a(s - 1, s - 1, Rational(0));
            std::vector<Rational> rhs(s - 1);
            std::size_t row = 0;
            for (int k : others) {
                if (k == 1) continue;
                for (std::size_t j = 1; j < s; ++j) a(row, j - 1) = sys.A(j, k) * sys.tau[j - 1];
                rhs[row] = -sys.A(s, k) * sys.tau[s - 1];
                ++row;
            }
            mu = solve(a, rhs);
        }
        const std::size_t nsigns = B.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << nsigns); ++mask) {
            std::vector<int> e;
            for (std::size_t b = 0; b < nsigns; ++b) e.push_back((mask >> b) & 1u ? 1 : -1);
            if (d == 2 && std::find(e.begin(), e.end(), 1) != e.end()) continue;  // T' has no root with T = 1
            std::vector<Rational> rhs(s);
            for (std::size_t i = 1; i <= s; ++i) {
                Rational acc = -Rational(static_cast<long>(n)) - sys.A(i, n + 1);
                for (std::size_t b = 0; b < nsigns; ++b) acc -= sys.A(i, static_cast<std::size_t>(B[b])) * e[b];
                rhs[i - 1] = acc;
            }
            QMatrix a = cauchy_matrix(sys.offsets, others);
            const std::vector<Rational> c = solve(a, rhs);
            for (const auto& ck : c)
                if (ck == 1 || ck == -1) throw InternalError("Chebyshev level value equals +-1");
            std::vector<QPoly> factors(n);
            for (std::size_t b = 0; b < nsigns; ++b) factors[static_cast<std::size_t>(B[b]) - 1] = e[b] < 0 ? minus : plus;
            for (std::size_t o = 0; o < others.size(); ++o)
                factors[static_cast<std::size_t>(others[o]) - 1] = monic(T - QPoly{c[o]});
            Type2Block blk;
            blk.in_b = B;
            blk.e = e;
            blk.c = c;
            blk.others = others;
            blk.mu = mu;
            blk.res = composed_sum_resolution(factors, alpha);
            out.merged = merge(out.merged, blk.res);
            out.blocks.push_back(std::move(blk));
        }
    }
    return out;
}

/// Values of the chart program at the block's parametrized points, as
/// residues mod the block modulus.
inline std::vector<QPoly> type2_block_residuals(const Slp& chart, const Type2Block& blk) {
    auto ring = make_quotient_ring(blk.res.q);
    std::vector<QuotientElement> args;
    for (const auto& v : parametrization(blk.res)) args.emplace_back(ring, v);
    for (const auto& m : blk.mu) args.emplace_back(ring, QPoly{m});
    std::vector<QPoly> out;
    for (const auto& e : eval(chart, args, QuotientElement(ring, QPoly{}))) out.push_back(e.rep());
    return out;
}

}  // namespace homsign
