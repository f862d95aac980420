#pragma once

// Deformation F = (1 - t) h + t g from a start system g with known solutions
// to a target h, solved by lifting the start solutions to series in (t - 1),
// reconstructing the characteristic polynomial of a random linear form as a
// rational function of t and specializing at t = 0.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dual.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "pade.hpp"
#include "quotient.hpp"
#include "resolution.hpp"
#include "series.hpp"
#include "slp.hpp"
#include "symmetric.hpp"
#include "systems.hpp"

namespace homsign {

struct DeformationProblem {
    Slp F;                  // inputs: chart variables, then t
    Slp J;                  // d F / d(chart variables), row-major
    std::size_t nx = 0;     // leading x variables among the chart variables
    std::size_t nvars = 0;
    std::uint64_t D = 0;
    std::size_t N = 0;      // 2 nx D + 1
};

inline DeformationProblem assemble(const Slp& target, const Slp& initial, std::size_t nx, std::uint64_t D) {
    if (target.num_inputs != initial.num_inputs || target.num_outputs() != initial.num_outputs())
        throw std::invalid_argument("target and start systems have different shapes");
    if (target.num_outputs() != target.num_inputs) throw std::invalid_argument("deformation needs a square system");
    const std::size_t v = target.num_inputs, r = target.num_outputs();
    SlpBuilder b(v + 1);
    std::vector<Node> x;
    for (std::size_t i = 0; i < v; ++i) x.push_back(b.input(i));
    const Node t = b.input(v);
    auto h = b.inline_slp(target, x);
    auto g = b.inline_slp(initial, x);
    std::vector<Node> outs;
    for (std::size_t i = 0; i < r; ++i) outs.push_back(b.add(h[i], b.mul(t, b.sub(g[i], h[i]))));
    DeformationProblem prob;
    prob.F = b.finish(outs);
    const Slp fj = with_jacobian(prob.F);
    std::vector<std::size_t> jsel;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < v; ++c) jsel.push_back(r + i * (v + 1) + c);
    prob.J = select_outputs(fj, jsel);
    prob.nx = nx;
    prob.nvars = v;
    prob.D = D;
    prob.N = static_cast<std::size_t>(2 * nx * D + 1);

    // Spot check of the endpoints and midpoint.
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> p;
        for (std::size_t i = 0; i < v; ++i) p.push_back(make_rational(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 7) + 1));
        const auto hv = eval(target, p, Rational(0)), gv = eval(initial, p, Rational(0));
        for (const auto& [tv, expect] : {std::pair{Rational(0), hv}, std::pair{Rational(1), gv}}) {
            auto q = p;
            q.push_back(tv);
            if (eval(prob.F, q, Rational(0)) != expect) throw InternalError("deformation endpoint mismatch");
        }
        auto q = p;
        q.push_back(make_rational(1, 2));
        const auto mid = eval(prob.F, q, Rational(0));
        for (std::size_t i = 0; i < r; ++i)
            if (mid[i] != (hv[i] + gv[i]) / 2) throw InternalError("deformation midpoint mismatch");
    }
    return prob;
}

struct StepRecord {
    std::size_t precision;  // the residual must vanish to this order
    std::size_t valuation;  // observed valuation of F at the lifted point
};

template <class C>
struct Lifted {
    std::vector<Series<C>> coords;
    std::vector<StepRecord> steps;
};

namespace detail {

template <class C>
std::vector<Series<C>> eval_series(const Slp& p, const std::vector<Series<C>>& x, std::size_t order, const C& like) {
    std::vector<Series<C>> in;
    in.reserve(x.size() + 1);
    for (const auto& s : x) in.push_back(s.with_order(order));
    in.push_back(Series<C>::t_variable(like, order));
    return eval(p, in, in[0]);
}

template <class C>
Matrix<Series<C>> as_matrix(const std::vector<Series<C>>& entries, std::size_t r) {
    Matrix<Series<C>> m(r, r, entries[0]);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = entries[i * r + j];
    return m;
}

template <class C>
Matrix<Series<C>> with_order(const Matrix<Series<C>>& m, std::size_t order) {
    Matrix<Series<C>> out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).with_order(order);
    return out;
}

template <class C>
std::size_t min_valuation(const std::vector<Series<C>>& v) {
    std::size_t m = v[0].order();
    for (const auto& s : v) m = std::min(m, s.valuation());
    return m;
}

}  // namespace detail

/// Newton lifting of one start solution (rational, or algebraic over a
/// quotient ring) to precision N, doubling the order at each step and
/// updating the inverse Jacobian incrementally.
template <class C>
Lifted<C> newton_lift(const DeformationProblem& prob, const std::vector<C>& start, std::size_t N) {
    const std::size_t r = prob.nvars;
    if (start.size() != r) throw std::invalid_argument("start point has wrong dimension");
    const C& like = start[0];
    Lifted<C> out;
    for (const auto& c : start) out.coords.push_back(Series<C>::constant(c, 1));
    auto& S = out.coords;

    // B ~ J(S)^{-1} to the current precision; A_prev the Jacobian it inverts.
    Matrix<Series<C>> A_prev = detail::as_matrix(detail::eval_series(prob.J, S, 1, like), r);
    Matrix<C> a0(r, r, like);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a0(i, j) = A_prev(i, j)[0];
    Matrix<C> b0;
    try {
        b0 = inverse(a0);
    } catch (const SingularMatrix&) {
        throw InternalError("singular Jacobian at a start point");
    }
    Matrix<Series<C>> B(r, r, Series<C>::constant(zero_like(like), 1));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) B(i, j) = Series<C>::constant(b0(i, j), 1);

    std::size_t kappa = 1;
    for (std::size_t m = 0;; ++m) {
        const std::size_t next = std::min(2 * kappa, N);
        const auto Fv = detail::eval_series(prob.F, S, std::max(next, kappa), like);
        const std::size_t val = detail::min_valuation(Fv);
        out.steps.push_back({kappa, val});
        if (val < kappa) throw InternalError("lifting residual invariant violated");
        if (kappa >= N) break;
        if (m >= 1) {
            const auto A = detail::as_matrix(detail::eval_series(prob.J, S, kappa, like), r);
            const auto Bk = detail::with_order(B, kappa);
            const auto two = [](const Matrix<Series<C>>& x) { return x + x; };
            if (m == 1) {
                B = two(Bk) - Bk * A * Bk;
            } else {
                const auto Bp = Bk - Bk * (A - detail::with_order(A_prev, kappa)) * Bk;
                B = two(Bp) - Bp * A * Bp;
            }
            A_prev = A;
        }
        const auto step = detail::with_order(B, next).apply(Fv);
        for (std::size_t i = 0; i < r; ++i) S[i] = S[i].with_order(next) - step[i];
        kappa = next;
    }
    return out;
}

using DualSeries = Dual<QSeries>;
using CharPoly = Poly<DualSeries>;

/// The linear form sum y_k x_k at y = alpha + eps over the lifted coordinates.
template <class C>
Dual<Series<C>> linear_form(const std::vector<Series<C>>& x, std::size_t nx, const std::vector<Rational>& alpha) {
    Series<C> v = zero_like(x[0]);
    std::vector<Series<C>> d;
    for (std::size_t k = 0; k < nx; ++k) {
        Series<C> term = x[k];
        scale_by(term, alpha[k]);
        v += term;
        d.push_back(x[k]);
    }
    return Dual<Series<C>>(std::move(v), std::move(d));
}

/// prod_i (U - l(S_i, y)) by a product tree over rational branches.
inline CharPoly charpoly_points(const std::vector<std::vector<QSeries>>& branches, std::size_t nx,
                                const std::vector<Rational>& alpha) {
    if (branches.empty()) throw std::invalid_argument("no branches");
    std::vector<CharPoly> layer;
    for (const auto& b : branches) {
        DualSeries l = linear_form(b, nx, alpha);
        layer.push_back(CharPoly(std::vector<DualSeries>{-l, one_like(l)}));
    }
    while (layer.size() > 1) {
        std::vector<CharPoly> next;
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(layer[i] * layer[i + 1]);
        if (layer.size() % 2 == 1) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer[0];
}

namespace detail {

/// Trace from Q[U]/(q) to Q applied coefficientwise.
struct TraceMap {
    std::vector<Rational> pi;  // Tr(U^i)
    explicit TraceMap(const QPoly& q) : pi(power_sums(monic(q), static_cast<std::size_t>(q.degree()))) {}
    Rational operator()(const QuotientElement& e) const {
        Rational acc(0);
        for (std::size_t i = 0; i < e.rep().size(); ++i) acc += e.rep()[i] * pi[i];
        return acc;
    }
    QSeries operator()(const Series<QuotientElement>& s) const {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < s.order(); ++i) v.push_back((*this)(s[i]));
        return QSeries(std::move(v));
    }
    DualSeries operator()(const Dual<Series<QuotientElement>>& x) const {
        std::vector<QSeries> d;
        for (const auto& c : x.d) d.push_back((*this)(c));
        return DualSeries((*this)(x.value), std::move(d));
    }
};

}  // namespace detail

/// Norm of U - l over a quotient-ring block: its characteristic polynomial
/// from the traces of the powers of l and Newton's identities.
inline CharPoly charpoly_block(const std::vector<Series<QuotientElement>>& x, std::size_t nx,
                               const std::vector<Rational>& alpha) {
    const QPoly& q = x[0][0].ring()->modulus();
    const std::size_t deg = static_cast<std::size_t>(q.degree());
    detail::TraceMap tr(q);
    const auto l = linear_form(x, nx, alpha);
    std::vector<DualSeries> p;
    auto power = l;
    p.push_back(zero_like(tr(l)));
    for (std::size_t j = 1; j <= deg; ++j) {
        p.push_back(tr(power));
        if (j < deg) power *= l;
    }
    return poly_from_power_sums(p, deg, p[0]);
}

/// Numerators and common denominator of the coefficients of P and of its
/// first-order y-derivatives, as polynomials in u = t - 1.
struct CharPolyData {
    std::vector<QPoly> value;                 // coefficient of U^h
    std::vector<std::vector<QPoly>> deriv;    // [k][h]: coefficient of U^h (y_k - alpha_k)
    QPoly denominator;

    int max_degree() const {
        int d = denominator.degree();
        for (const auto& p : value) d = std::max(d, p.degree());
        for (const auto& row : deriv)
            for (const auto& p : row) d = std::max(d, p.degree());
        return d;
    }
    /// Numerator of the U^h coefficient in the variable t.
    QPoly value_in_t(std::size_t h) const { return u_to_t(value[h]); }
    QPoly denominator_in_t() const { return u_to_t(denominator); }
};

/// Rational reconstruction of every coefficient with degree bound nx * D.
inline CharPolyData reconstruct_charpoly(const CharPoly& P, std::size_t nx, std::uint64_t D) {
    const int bound = static_cast<int>(nx * D);
    std::vector<QSeries> family;
    const std::size_t nk = P[0].d.size();
    for (std::size_t h = 0; h < P.size(); ++h) family.push_back(P[h].value);
    for (std::size_t k = 0; k < nk; ++k)
        for (std::size_t h = 0; h < P.size(); ++h) family.push_back(P[h].d[k]);
    CommonDenominator cd = reconstruct_family_u(family, bound);
    CharPolyData out;
    out.denominator = cd.denominator;
    out.value.assign(cd.numerators.begin(), cd.numerators.begin() + static_cast<std::ptrdiff_t>(P.size()));
    for (std::size_t k = 0; k < nk; ++k) {
        auto first = cd.numerators.begin() + static_cast<std::ptrdiff_t>(P.size() * (k + 1));
        out.deriv.emplace_back(first, first + static_cast<std::ptrdiff_t>(P.size()));
    }
    return out;
}

/// Geometric resolution read off at t = 0 (u = -1).
inline GeometricResolution specialize_and_extract(const CharPolyData& cp) {
    const Rational at(-1);
    std::vector<Rational> p0;
    for (const auto& c : cp.value) p0.push_back(c(at));
    const QPoly P0(p0);
    const std::size_t nk = cp.deriv.size();
    if (P0.degree() < 1) return empty_resolution(nk);
    const QPoly dP0 = derivative(P0);
    const QPoly Q = gcd(P0, dP0);
    GeometricResolution r;
    try {
        r.q = exact_div(P0, Q);
        r.qtilde = exact_div(dP0, Q);
        for (std::size_t k = 0; k < nk; ++k) {
            std::vector<Rational> y;
            for (const auto& c : cp.deriv[k]) y.push_back(c(at));
            r.w.push_back(-exact_div(QPoly(y), Q));
        }
    } catch (const InexactDivision&) {
        throw BadAlpha("specialized derivatives not divisible by the multiplicity factor");
    }
    const Rational inv = 1 / r.q.leading();
    r.q *= inv;
    r.qtilde *= inv;
    for (auto& w : r.w) w *= inv;
    return normalize(r);
}

/// The first `count` outputs of `chart` (which must not depend on the
/// non-x inputs) vanish at every point of the resolution.
inline bool x_equations_vanish(const Slp& chart, std::size_t count, const GeometricResolution& res) {
    if (res.empty()) return true;
    auto ring = make_quotient_ring(res.q);
    std::vector<QuotientElement> args;
    for (const auto& v : parametrization(res)) args.emplace_back(ring, v);
    while (args.size() < chart.num_inputs) args.emplace_back(ring, QPoly{});
    const auto out = eval(select_outputs(chart, [&] {
                              std::vector<std::size_t> idx;
                              for (std::size_t i = 0; i < count; ++i) idx.push_back(i);
                              return idx;
                          }()),
                          args, args[0]);
    for (const auto& e : out)
        if (!is_zero(e)) return false;
    return true;
}

// ---------------------------------------------------------------- driver

struct StartSystem {
    enum class Kind { Type1, Type2 } kind = Kind::Type1;
    InitialSystemType1 type1;
    InitialSystemType2 type2;
    Slp chart;
    std::uint64_t D = 0;
};

inline StartSystem type1_start(std::size_t s, std::size_t n, const std::vector<int>& degrees) {
    StartSystem st;
    st.kind = StartSystem::Kind::Type1;
    auto [sys, g] = build_type1(s, n, degrees);
    st.type1 = sys;
    st.chart = type1_chart(sys, g);
    st.D = bezout_count(s, n, degrees).D;
    return st;
}

inline StartSystem type2_start(std::size_t s, std::size_t n, int d, const std::vector<int>& tau,
                               const std::vector<Rational>& offsets) {
    StartSystem st;
    st.kind = StartSystem::Kind::Type2;
    auto [sys, g] = build_type2(s, n, d, tau, offsets);
    st.type2 = sys;
    st.chart = type2_chart(sys, g);
    st.D = sys.bezout();
    return st;
}

struct DeformationStats {
    std::uint64_t D = 0;
    std::size_t N = 0;
    std::size_t nx = 0;
    std::vector<std::vector<StepRecord>> lifts;  // one per branch or block piece
    int reconstructed_degree = -1;               // max t-degree over numerators and denominator
    int attempts = 0;
};

struct DeformationOutcome {
    GeometricResolution res;
    DeformationStats stats;
};

inline std::vector<Rational> random_alpha(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> a;
    for (std::size_t k = 0; k < n; ++k) a.emplace_back(static_cast<long>(1 + rng() % 65536));
    return a;
}

namespace detail {

struct BlockPiece {
    Lifted<QuotientElement> lifted;
};

/// Lifts a quotient-ring start point, splitting the modulus whenever a
/// zero divisor shows up.
inline void lift_split(const DeformationProblem& prob, const QPoly& q, const std::vector<QPoly>& start,
                       std::vector<BlockPiece>& out) {
    auto ring = make_quotient_ring(q);
    std::vector<QuotientElement> pt;
    for (const auto& v : start) pt.emplace_back(ring, v);
    try {
        out.push_back({newton_lift(prob, pt, prob.N)});
    } catch (const NotInvertible& e) {
        const QPoly g = monic(e.factor);
        if (g.degree() < 1 || g.degree() >= q.degree()) throw InternalError("singular Jacobian on a whole block");
        lift_split(prob, g, start, out);
        lift_split(prob, exact_div(monic(q), g), start, out);
    }
}

}  // namespace detail

/// Runs one deformation from `start` to the target chart system. The first
/// `x_only` target equations involve x only and are used to reject linear
/// forms that fail to separate the limit points.
inline DeformationOutcome solve_deformation(const Slp& target_chart, std::size_t x_only, const StartSystem& start,
                                            std::size_t nx, std::mt19937_64& rng, int max_attempts = 5) {
    DeformationProblem prob = assemble(target_chart, start.chart, nx, start.D);
    DeformationOutcome out;
    out.stats.D = prob.D;
    out.stats.N = prob.N;
    out.stats.nx = nx;

    std::vector<std::vector<QSeries>> branches;
    if (start.kind == StartSystem::Kind::Type1) {
        for (const auto& p : enumerate_type1_solutions(start.type1, false)) {
            auto lifted = newton_lift(prob, p, prob.N);
            out.stats.lifts.push_back(lifted.steps);
            branches.push_back(std::move(lifted.coords));
        }
    }
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        out.stats.attempts = attempt;
        const auto alpha = random_alpha(rng, nx);
        try {
            CharPoly P;
            if (start.kind == StartSystem::Kind::Type1) {
                std::vector<Rational> vals;
                for (const auto& b : branches) {
                    Rational l(0);
                    for (std::size_t k = 0; k < nx; ++k) l += alpha[k] * b[k][0];
                    vals.push_back(l);
                }
                std::sort(vals.begin(), vals.end());
                if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
                    throw BadAlpha("linear form does not separate the start points");
                P = charpoly_points(branches, nx, alpha);
            } else {
                const auto t2 = resolve_type2(start.type2, alpha);
                std::vector<detail::BlockPiece> pieces;
                for (const auto& blk : t2.blocks) {
                    std::vector<QPoly> pt = parametrization(blk.res);
                    for (const auto& m : blk.mu) pt.push_back(QPoly{m});
                    detail::lift_split(prob, blk.res.q, pt, pieces);
                }
                out.stats.lifts.clear();
                bool first = true;
                for (auto& piece : pieces) {
                    out.stats.lifts.push_back(piece.lifted.steps);
                    CharPoly Pb = charpoly_block(piece.lifted.coords, nx, alpha);
                    P = first ? Pb : P * Pb;
                    first = false;
                }
            }
            CharPolyData cp = reconstruct_charpoly(P, nx, prob.D);
            out.stats.reconstructed_degree = cp.max_degree();
            GeometricResolution res = specialize_and_extract(cp);
            if (!x_equations_vanish(target_chart, x_only, res)) throw BadAlpha("extracted points fail the target equations");
            out.res = std::move(res);
            return out;
        } catch (const BadAlpha&) {
        } catch (const NoReconstruction&) {
        }
    }
    throw BadRandomness("no separating linear form after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace homsign
