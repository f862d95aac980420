#pragma once

// Signs of the input polynomials at the real points of geometric
// resolutions, and the list of realized sign conditions.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "interval.hpp"
#include "poly.hpp"
#include "quotient.hpp"
#include "resolution.hpp"
#include "sampler.hpp"
#include "slp.hpp"

namespace homsign {

// ---------------------------------------------------------------- roots

/// Signed remainder sequence a, b, -rem(a, b), ...
inline std::vector<QPoly> signed_remainder_sequence(const QPoly& a, const QPoly& b) {
    std::vector<QPoly> seq{a};
    if (b.empty()) return seq;
    seq.push_back(b);
    for (;;) {
        QPoly r = -rem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        seq.push_back(std::move(r));
    }
    return seq;
}

inline int sign_variations(const std::vector<QPoly>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        const int s = sgn(p(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

/// Smallest power of two strictly above every |root| of p.
inline Rational root_bound(const QPoly& p) {
    Rational m(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, Rational(abs(p[i] / p.leading())));
    Rational b(1);
    while (b <= m + 1) b *= 2;
    return b;
}

/// Open interval (lo, hi) holding exactly one real root; endpoints are not roots.
using IsolatingInterval = Interval;

/// Real roots of a squarefree q, increasing, isolated by Sturm bisection.
inline std::vector<IsolatingInterval> isolate_real_roots(const QPoly& q) {
    std::vector<IsolatingInterval> out;
    if (q.degree() < 1) return out;
    const auto sturm = signed_remainder_sequence(q, derivative(q));
    const Rational B = root_bound(q);
    struct Job { Rational lo, hi; int vlo, vhi; };
    std::vector<Job> stack{{-B, B, sign_variations(sturm, -B), sign_variations(sturm, B)}};
    const int total = stack[0].vlo - stack[0].vhi;
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        const int c = j.vlo - j.vhi;
        if (c == 0) continue;
        if (c == 1) {
            out.push_back({j.lo, j.hi});
            continue;
        }
        Rational mid = (j.lo + j.hi) / 2;
        while (sgn(q(mid)) == 0) mid = (j.lo + mid) / 2;
        const int vm = sign_variations(sturm, mid);
        stack.push_back({j.lo, mid, j.vlo, vm});
        stack.push_back({mid, j.hi, vm, j.vhi});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    if (static_cast<int>(out.size()) != total) throw InternalError("root isolation lost a root");
    return out;
}

/// Shrinks an isolating interval of q until its width is at most `width`.
inline IsolatingInterval refine(const QPoly& q, IsolatingInterval iv, const Rational& width) {
    int slo = sgn(q(iv.lo));
    while (iv.width() > width) {
        const Rational mid = iv.mid();
        const int sm = sgn(q(mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo) iv.lo = mid;
        else iv.hi = mid;
    }
    return iv;
}

/// Sum of sign(g) over the roots of q inside (lo, hi); endpoints must not be roots of q.
inline int tarski_query(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

inline std::vector<QPoly> tarski_sequence(const QPoly& q, const QPoly& g) {
    return signed_remainder_sequence(q, rem(derivative(q) * g, q));
}

/// Sign of g at each real root of the squarefree q, in increasing root order.
inline std::vector<int> signs_at_roots(const QPoly& q, const QPoly& g) {
    std::vector<int> out;
    const auto seq = tarski_sequence(q, g);
    for (const auto& iv : isolate_real_roots(q)) out.push_back(tarski_query(seq, iv.lo, iv.hi));
    return out;
}

/// f(v(U)) mod q for every output of f, where v parametrizes the points of r.
inline std::vector<QPoly> compose_mod(const Slp& f, const GeometricResolution& r) {
    if (r.empty()) return std::vector<QPoly>(f.num_outputs());
    auto ring = make_quotient_ring(r.q);
    std::vector<QuotientElement> x;
    for (const auto& v : parametrization(r)) x.emplace_back(ring, v);
    std::vector<QPoly> out;
    for (const auto& e : eval(f, x, QuotientElement(ring, QPoly{}))) out.push_back(e.rep());
    return out;
}

// ---------------------------------------------------------------- sign matrix

struct RootSigns {
    IsolatingInterval interval;
    std::vector<int> signs;  // one per polynomial, in {-1, 0, 1}
};

/// Per resolution, the real roots of q with the signs of every f_i there.
struct SignMatrix {
    std::vector<std::vector<RootSigns>> rows;
};

inline std::vector<RootSigns> resolution_signs(const Slp& f, const GeometricResolution& r) {
    std::vector<RootSigns> rows;
    if (r.empty()) return rows;
    const auto roots = isolate_real_roots(r.q);
    for (const auto& iv : roots) rows.push_back({iv, {}});
    for (const auto& g : compose_mod(f, r)) {
        const auto seq = tarski_sequence(r.q, g);
        for (auto& row : rows) row.signs.push_back(tarski_query(seq, row.interval.lo, row.interval.hi));
    }
    return rows;
}

inline SignMatrix sign_matrix(const SamplePointSet& pts, const Slp& f) {
    SignMatrix m;
    for (const auto& tr : pts.resolutions) m.rows.push_back(resolution_signs(f, tr.res));
    return m;
}

// ---------------------------------------------------------------- conditions

enum class ConditionKind { Strict, Closed };

/// A real root of a resolution, or a rational point near it when `point` is set.
struct Witness {
    std::size_t resolution = 0;
    std::size_t root = 0;
    std::vector<Rational> point;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Strict entries are the signs -1, 0, 1 (<, =, >); closed entries use
/// -1, 0, 1 for <=, =, >=.
struct SignCondition {
    ConditionKind kind = ConditionKind::Strict;
    std::vector<int> signs;
    bool derived = false;
    std::vector<Witness> witnesses;

    friend bool operator==(const SignCondition&, const SignCondition&) = default;
};

inline std::string render(const std::vector<int>& signs, ConditionKind kind) {
    std::string s;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (i) s += ',';
        if (kind == ConditionKind::Strict) s += signs[i] < 0 ? "-" : signs[i] > 0 ? "+" : "0";
        else s += signs[i] < 0 ? "-0" : signs[i] > 0 ? "0+" : "0";
    }
    return s;
}

inline std::vector<int> parse_signs(const std::string& text, ConditionKind kind) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = std::min(text.find(',', pos), text.size());
        const std::string tok = text.substr(pos, next - pos);
        const bool strict = kind == ConditionKind::Strict;
        if (tok == (strict ? "-" : "-0")) out.push_back(-1);
        else if (tok == "0") out.push_back(0);
        else if (tok == (strict ? "+" : "0+")) out.push_back(1);
        else throw std::invalid_argument("bad sign token: " + tok);
        pos = next + 1;
    }
    return out;
}

/// Closed vectors satisfied at a point with the given exact signs.
inline std::vector<std::vector<int>> closed_vectors(const std::vector<int>& signs) {
    std::vector<std::vector<int>> out{{}};
    for (int s : signs) {
        std::vector<std::vector<int>> next;
        for (const auto& v : out) {
            for (int c : {-1, 0, 1}) {
                if (s != 0 && c != s) continue;
                auto w = v;
                w.push_back(c);
                next.push_back(std::move(w));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Exactly verified rational points close to real roots: the rounded root
/// itself and small axis-aligned perturbations of it.
inline std::vector<std::pair<Witness, std::vector<int>>> nearby_rational_points(const SamplePointSet& pts, const Slp& f,
                                                                                const SignMatrix& m) {
    std::vector<std::pair<Witness, std::vector<int>>> out;
    const std::size_t n = pts.n;
    for (std::size_t r = 0; r < pts.resolutions.size(); ++r) {
        const auto& res = pts.resolutions[r].res;
        if (m.rows[r].empty()) continue;
        const auto v = parametrization(res);
        for (std::size_t j = 0; j < m.rows[r].size(); ++j) {
            IsolatingInterval iv = m.rows[r][j].interval;
            std::vector<Rational> x(n);
            const Rational target = make_rational(1, 1 << 24);
            for (;;) {
                bool tight = true;
                for (std::size_t k = 0; k < n; ++k) {
                    const Interval img = evaluate(v[k], iv);
                    if (img.width() > target) tight = false;
                    x[k] = round_dyadic(img.mid(), 24);
                }
                if (tight || iv.width() == 0) break;
                iv = refine(res.q, iv, iv.width() / 16);
            }
            std::set<std::vector<int>> seen;
            auto consider = [&](const std::vector<Rational>& y) {
                auto vals = eval(f, y, Rational(0));
                std::vector<int> s;
                for (const auto& val : vals) s.push_back(sgn(val));
                if (seen.insert(s).second) out.push_back({Witness{r, j, y}, s});
            };
            consider(x);
            for (int e : {6, 10, 14})
                for (std::size_t k = 0; k < n; ++k)
                    for (int dir : {-1, 1}) {
                        auto y = x;
                        y[k] += make_rational(dir, 1L << e);
                        consider(y);
                    }
        }
    }
    return out;
}

/// Distinct conditions realized at the points, sorted by sign vector, each
/// with its witnesses. With `perturb`, rational points near the algebraic
/// ones contribute further witnessed conditions.
inline std::vector<SignCondition> list_conditions(const SamplePointSet& pts, const Slp& f, ConditionKind kind,
                                                  bool perturb = false) {
    const SignMatrix m = sign_matrix(pts, f);
    std::map<std::vector<int>, std::vector<Witness>> found;
    auto record = [&](const std::vector<int>& signs, const Witness& w) {
        if (kind == ConditionKind::Strict) {
            found[signs].push_back(w);
        } else {
            for (const auto& c : closed_vectors(signs)) found[c].push_back(w);
        }
    };
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (std::size_t j = 0; j < m.rows[r].size(); ++j) record(m.rows[r][j].signs, Witness{r, j, {}});
    if (perturb)
        for (const auto& [w, s] : nearby_rational_points(pts, f, m)) record(s, w);
    std::vector<SignCondition> out;
    for (auto& [signs, ws] : found) out.push_back({kind, signs, false, std::move(ws)});
    return out;
}

/// Adds every vector obtained by replacing some '=' entries with '<' or '>',
/// flagged as derived when not already realized.
inline std::vector<SignCondition> expand_equalities(const std::vector<SignCondition>& realized) {
    std::map<std::vector<int>, SignCondition> all;
    for (const auto& c : realized) all.emplace(c.signs, c);
    for (const auto& c : realized) {
        std::vector<std::vector<int>> variants{{}};
        for (int s : c.signs) {
            std::vector<std::vector<int>> next;
            for (const auto& v : variants) {
                for (int t : {-1, 0, 1}) {
                    if (s != 0 && t != s) continue;
                    auto w = v;
                    w.push_back(t);
                    next.push_back(std::move(w));
                }
            }
            variants = std::move(next);
        }
        for (const auto& v : variants)
            if (!all.count(v)) all.emplace(v, SignCondition{ConditionKind::Strict, v, true, {}});
    }
    std::vector<SignCondition> out;
    for (auto& [k, c] : all) out.push_back(std::move(c));
    return out;
}

/// Re-evaluates a witness: exact evaluation at a rational point, or
/// compose_mod plus Tarski queries at a root.
inline std::vector<int> witness_signs(const SamplePointSet& pts, const Slp& f, const Witness& w) {
    std::vector<int> s;
    if (!w.point.empty()) {
        for (const auto& v : eval(f, w.point, Rational(0))) s.push_back(sgn(v));
        return s;
    }
    const auto& res = pts.resolutions.at(w.resolution).res;
    const auto roots = isolate_real_roots(res.q);
    const auto& iv = roots.at(w.root);
    for (const auto& g : compose_mod(f, res)) s.push_back(tarski_query(tarski_sequence(res.q, g), iv.lo, iv.hi));
    return s;
}

inline bool witness_realizes(const std::vector<int>& point_signs, const SignCondition& c) {
    for (std::size_t i = 0; i < c.signs.size(); ++i) {
        if (c.kind == ConditionKind::Strict ? point_signs[i] != c.signs[i]
                                            : (c.signs[i] == 0 ? point_signs[i] != 0 : point_signs[i] == -c.signs[i]))
            return false;
    }
    return true;
}

}  // namespace homsign
