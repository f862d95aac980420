#pragma once

// Drivers producing finite sets of algebraic points, one geometric
// resolution per (level, subset, sign vector) deformation plus the
// univariate slices and the base point.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "homotopy.hpp"
#include "linalg.hpp"
#include "mpoly.hpp"
#include "resolution.hpp"
#include "slp.hpp"
#include "systems.hpp"

namespace homsign {

enum class Mode { Regular, Closed, Bivariate, Single };

inline std::string to_string(Mode m) {
    switch (m) {
        case Mode::Regular: return "regular";
        case Mode::Closed: return "closed";
        case Mode::Bivariate: return "bivariate";
        case Mode::Single: return "single";
    }
    return "?";
}

inline Mode parse_mode(const std::string& s) {
    if (s == "regular") return Mode::Regular;
    if (s == "closed") return Mode::Closed;
    if (s == "bivariate") return Mode::Bivariate;
    if (s == "single") return Mode::Single;
    throw std::invalid_argument("unknown mode: " + s);
}

struct SamplerConfig {
    Mode mode = Mode::Regular;
    std::uint64_t seed = 1;
    long coefficient_bound = 65536;  // entries of M and p drawn from [-bound, bound]
    int max_retries = 5;
    unsigned threads = 1;
    std::uint64_t schedule_seed = 0;  // nonzero: execute tasks in a shuffled order
    std::string sigma;                // optional pattern over <,=,>,*
};

struct Provenance {
    enum class Kind { Critical, Slice, Point } kind = Kind::Critical;
    int level = 0;                     // k
    std::vector<std::size_t> subset;   // 0-based polynomial indices
    std::vector<int> tau;              // closed and single modes

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TaggedResolution {
    GeometricResolution res;  // original coordinates
    Provenance prov;

    friend bool operator==(const TaggedResolution&, const TaggedResolution&) = default;
};

struct SamplePointSet {
    std::size_t n = 0;
    QMatrix M;
    std::vector<Rational> p;
    std::vector<TaggedResolution> resolutions;

    friend bool operator==(const SamplePointSet& a, const SamplePointSet& b) {
        return a.n == b.n && a.M == b.M && a.p == b.p && a.resolutions == b.resolutions;
    }
};

/// Per-deformation diagnostics, kept alongside the point set.
struct TaskReport {
    Provenance prov;
    DeformationStats stats;
};

struct SamplerResult {
    SamplePointSet points;
    std::vector<TaskReport> reports;
};

inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline ChangeOfVariables random_change_of_variables(std::mt19937_64& rng, std::size_t n, long bound) {
    for (;;) {
        QMatrix m(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform_int(rng, -bound, bound);
        if (determinant(m) != 0) return ChangeOfVariables(m);
    }
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n, long bound) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) p.emplace_back(uniform_int(rng, -bound, bound));
    return p;
}

/// E_sigma: indices of '=' in the pattern; empty pattern means no filter.
inline std::vector<std::size_t> sigma_equalities(const std::string& sigma, std::size_t m) {
    std::vector<std::size_t> eq;
    if (sigma.empty()) return eq;
    if (sigma.size() != m) throw std::invalid_argument("sigma pattern length differs from the number of polynomials");
    for (std::size_t i = 0; i < m; ++i) {
        const char c = sigma[i];
        if (c == '=') eq.push_back(i);
        else if (c != '<' && c != '>' && c != '*') throw std::invalid_argument("sigma pattern uses characters outside <,=,>,*");
    }
    return eq;
}

namespace detail {

struct Task {
    Provenance prov;
    Slp fk;  // polynomials at this level, in n - k + 1 variables
};

inline std::mt19937_64 task_rng(std::uint64_t seed, const Provenance& prov, int salt) {
    std::vector<std::uint32_t> seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                   static_cast<std::uint32_t>(prov.level), static_cast<std::uint32_t>(salt)};
    for (auto i : prov.subset) seq.push_back(static_cast<std::uint32_t>(i) + 1000);
    for (auto t : prov.tau) seq.push_back(t > 0 ? 7 : 11);
    std::seed_seq ss(seq.begin(), seq.end());
    return std::mt19937_64(ss);
}

/// Heuristic zero test by evaluation at a few pseudo-random points.
inline bool looks_zero(const Slp& f, std::size_t output, std::uint64_t salt) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ salt);
    Slp one = select_outputs(f, {output});
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Rational> x;
        for (std::size_t i = 0; i < f.num_inputs; ++i) x.emplace_back(uniform_int(rng, -1000, 1000));
        if (eval(one, x, Rational(0))[0] != 0) return false;
    }
    return true;
}

inline int even_degree_bound(const std::vector<int>& degrees) {
    int d = 2;
    for (int x : degrees) d = std::max(d, x);
    return d % 2 == 0 ? d : d + 1;
}

inline GeometricResolution run_task(const Task& task, const std::vector<int>& degrees, const SamplerConfig& cfg,
                                    std::size_t m, DeformationStats& stats) {
    const std::size_t n_eff = task.fk.num_inputs;
    const LagrangeSystem sys = build_lagrange(task.fk, task.prov.subset, degrees);
    const Slp chart = sys.chart();
    const std::size_t x_only = sys.kind == LagrangeCase::Mid ? sys.s : sys.num_equations();
    StartSystem start;
    switch (cfg.mode) {
        case Mode::Regular:
        case Mode::Bivariate: start = type1_start(sys.s, n_eff, sys.degrees); break;
        case Mode::Closed: {
            const int d = even_degree_bound(degrees);
            start = type2_start(sys.s, n_eff, d, task.prov.tau, indexed_type2_offsets(task.prov.subset, n_eff, m));
            break;
        }
        case Mode::Single: {
            const int d = even_degree_bound(degrees);
            const long q = primes_greater_than(static_cast<long>(n_eff), 1)[0];
            start = type2_start(1, n_eff, d, {1}, {Rational(q - static_cast<long>(n_eff) - 1)});
            break;
        }
    }
    auto rng = task_rng(cfg.seed, task.prov, 1);
    DeformationOutcome out = solve_deformation(chart, x_only, start, n_eff, rng, cfg.max_retries);
    stats = out.stats;
    return out.res;
}

}  // namespace detail

/// Runs the sampler in the configured mode. `f` has one output per
/// polynomial; `degrees` are trusted upper bounds of their total degrees.
inline SamplerResult run_sampler(const Slp& f, const std::vector<int>& degrees, const SamplerConfig& cfg) {
    const std::size_t n = f.num_inputs, m = f.num_outputs();
    if (degrees.size() != m) throw std::invalid_argument("one degree bound per polynomial is required");
    if (n == 0) throw std::invalid_argument("at least one variable is required");
    if (cfg.mode == Mode::Bivariate && n != 2) throw std::invalid_argument("bivariate mode needs exactly two variables");
    if (cfg.mode == Mode::Single && m != 1) throw std::invalid_argument("single mode needs exactly one polynomial");
    std::vector<int> deg;
    for (int d : degrees) deg.push_back(std::max(1, d));
    const auto eq = sigma_equalities(cfg.sigma, m);

    std::mt19937_64 rng(cfg.seed);
    SamplerResult result;
    SamplePointSet& out = result.points;
    out.n = n;
    const ChangeOfVariables M = random_change_of_variables(rng, n, cfg.coefficient_bound);
    out.M = M.matrix();
    const Slp fi = compose_linear(f, M);

    // Base point; redrawn while some polynomial vanishes identically on a
    // level of the recursion (regular-type modes only).
    for (int draw = 0;; ++draw) {
        out.p = cfg.mode == Mode::Closed ? std::vector<Rational>(n, Rational(0)) : random_point(rng, n, cfg.coefficient_bound);
        if (cfg.mode == Mode::Closed) break;
        bool degenerate = false;
        for (std::size_t k = 2; k <= n && !degenerate; ++k) {
            const Slp fk = substitute_prefix(fi, std::vector<Rational>(out.p.begin(), out.p.begin() + static_cast<std::ptrdiff_t>(k - 1)));
            for (std::size_t i = 0; i < m && !degenerate; ++i)
                if (!detail::looks_zero(f, i, 1) && detail::looks_zero(fk, i, k)) degenerate = true;
        }
        if (!degenerate) break;
        if (draw + 1 >= cfg.max_retries) throw BadRandomness("base point keeps degenerating a polynomial");
    }

    std::vector<detail::Task> tasks;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        const std::size_t n_eff = n - k + 1;
        const Slp fk = substitute_prefix(fi, std::vector<Rational>(out.p.begin(), out.p.begin() + static_cast<std::ptrdiff_t>(k - 1)));
        const std::size_t smax = std::min(n_eff, m);
        for (std::size_t s = 1; s <= smax; ++s) {
            for (const auto& c : combinations(0, static_cast<int>(m) - 1, static_cast<int>(s))) {
                std::vector<std::size_t> S(c.begin(), c.end());
                if (cfg.mode == Mode::Single && S != std::vector<std::size_t>{0}) continue;
                if (!std::includes(S.begin(), S.end(), eq.begin(), eq.end())) continue;
                const bool signed_family = cfg.mode == Mode::Closed;
                const std::size_t ntau = signed_family ? (std::size_t(1) << s) : 1;
                for (std::size_t mask = 0; mask < ntau; ++mask) {
                    Provenance prov;
                    prov.kind = Provenance::Kind::Critical;
                    prov.level = static_cast<int>(k);
                    prov.subset = S;
                    if (signed_family)
                        for (std::size_t j = 0; j < s; ++j) prov.tau.push_back((mask >> j) & 1u ? -1 : 1);
                    else if (cfg.mode == Mode::Single)
                        prov.tau = {1};
                    tasks.push_back({prov, fk});
                }
            }
        }
    }

    std::vector<GeometricResolution> res(tasks.size());
    std::vector<DeformationStats> stats(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::vector<std::size_t> order(tasks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (cfg.schedule_seed != 0) std::shuffle(order.begin(), order.end(), std::mt19937_64(cfg.schedule_seed));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < order.size();) {
            const std::size_t t = order[i];
            try {
                res[t] = detail::run_task(tasks[t], deg, cfg, m, stats[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(tasks.size())));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::string failures;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (errors[t]) {
            try {
                std::rethrow_exception(errors[t]);
            } catch (const BadRandomness& e) {
                failures += " [k=" + std::to_string(tasks[t].prov.level) + " S=";
                for (auto i : tasks[t].prov.subset) failures += std::to_string(i + 1) + ",";
                failures += "] " + std::string(e.what());
                continue;
            }
        }
        const std::size_t k = static_cast<std::size_t>(tasks[t].prov.level);
        GeometricResolution r = prefix(res[t], std::vector<Rational>(out.p.begin(), out.p.begin() + static_cast<std::ptrdiff_t>(k - 1)));
        out.resolutions.push_back({normalize(map_linear(r, out.M)), tasks[t].prov});
        result.reports.push_back({tasks[t].prov, stats[t]});
    }
    if (!failures.empty()) throw BadRandomness("seed " + std::to_string(cfg.seed) + ":" + failures);

    // Univariate slices through the base point, then the point itself.
    const std::vector<Rational> head(out.p.begin(), out.p.end() - 1);
    const Slp line = substitute_prefix(fi, head);
    std::vector<QPoly> u{variable_poly()};
    const auto hs = eval_univariate(line, u);
    for (std::size_t i = 0; i < m; ++i) {
        Provenance prov;
        prov.kind = Provenance::Kind::Slice;
        prov.level = static_cast<int>(n);
        prov.subset = {i};
        out.resolutions.push_back({normalize(map_linear(univariate_resolution(hs[i], head), out.M)), prov});
    }
    Provenance pp;
    pp.kind = Provenance::Kind::Point;
    pp.level = static_cast<int>(n);
    out.resolutions.push_back({normalize(map_linear(point_resolution(out.p), out.M)), pp});
    return result;
}

}  // namespace homsign
