// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "homsign/homsign.hpp"

using namespace homsign;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

/// Dense polynomial of total degree d in n variables, coefficients in [-5, 5],
/// with a nonzero coefficient on x_n^d.
std::string random_poly(std::mt19937_64& rng, std::size_t n, int d) {
    std::string s;
    std::vector<int> e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
        if (k == n) {
            int total = 0;
            for (int x : e) total += x;
            long c = static_cast<long>(rng() % 11) - 5;
            if (total == d && e[n - 1] == d && c == 0) c = 1;
            if (c == 0) return;
            s += (c < 0 ? " - " : " + ") + std::to_string(std::labs(c));
            for (std::size_t i = 0; i < n; ++i)
                if (e[i] > 0) s += "*x" + std::to_string(i + 1) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
            return;
        }
        for (int x = 0; x <= left; ++x) {
            e[k] = x;
            rec(k + 1, left - x);
        }
        e[k] = 0;
    };
    rec(0, d);
    return s.empty() ? "1" : "0" + s;
}

/// F(lift) == 0 mod (t-1)^p for p = 1, 2, 4, ..., N, re-evaluated from the
/// truncations of the final lift.
template <class C>
bool residual_doubling(const DeformationProblem& prob, const std::vector<Series<C>>& coords) {
    for (std::size_t p = 1;; p = std::min(2 * p, prob.N)) {
        std::vector<Series<C>> in;
        for (const auto& c : coords) in.push_back(c.with_order(p));
        in.push_back(Series<C>::t_variable(coords[0][0], p));
        for (const auto& r : eval(prob.F, in, in[0]))
            if (r.valuation() < p) return false;
        if (p == prob.N) return true;
    }
}

std::set<std::string> rendered(const std::vector<SignCondition>& cs) {
    std::set<std::string> out;
    for (const auto& c : cs) out.insert(render(c.signs, c.kind));
    return out;
}

bool meets_closure(const std::vector<SignCondition>& realized, const std::vector<int>& v) {
    for (const auto& c : realized) {
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (c.signs[i] != 0 && c.signs[i] != v[i]) ok = false;
        if (ok) return true;
    }
    return false;
}

// ---------------------------------------------------------------- 1

Outcome type1_counts() {
    const auto t0 = Clock::now();
    std::size_t systems = 0, points = 0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t s = 1; s <= n; ++s) {
            const std::size_t r = (s >= 2 && s < n) ? s + n - 1 : n;
            std::vector<int> deg(r, 1);
            for (;;) {
                auto [sys, g] = build_type1(s, n, deg);
                const auto pts = enumerate_type1_solutions(sys, false);
                const std::uint64_t D = bezout_count(s, n, deg).D;
                ++systems;
                points += pts.size();
                if (pts.size() != D || !check_start_points(type1_chart(sys, g), n, pts)) {
                    std::string t;
                    for (int d : deg) t += std::to_string(d);
                    return {false, "s=" + std::to_string(s) + " n=" + std::to_string(n) + " degrees " + t};
                }
                std::size_t k = 0;
                while (k < r && ++deg[k] > 3) deg[k++] = 1;
                if (k == r) break;
            }
        }
    const double el = seconds_since(t0);
    return {el < 10, std::to_string(systems) + " systems, " + std::to_string(points) + " points, " + fmt_seconds(el)};
}

// ---------------------------------------------------------------- 2

Outcome type2_counts() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2);
    std::size_t cases = 0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t s = 1; s <= n; ++s)
            for (int d : {2, 4}) {
                std::vector<int> tau;
                for (std::size_t j = 0; j < s; ++j) tau.push_back(rng() % 2 ? 1 : -1);
                auto [sys, g] = build_type2(s, n, d, tau, default_type2_offsets(s, n));
                std::vector<Rational> alpha;
                for (std::size_t k = 0; k < n; ++k) alpha.emplace_back(static_cast<long>(1 + rng() % 1000));
                const auto r = resolve_type2(sys, alpha);
                std::uint64_t expect = 1;
                for (std::size_t i = 1; i < s; ++i) expect = expect * (n - i) / i;  // C(n-1, s-1)
                for (std::size_t i = 0; i < n; ++i) expect *= static_cast<std::uint64_t>(i < s ? d : d - 1);
                const std::string where = "s=" + std::to_string(s) + " n=" + std::to_string(n) + " d=" + std::to_string(d);
                if (static_cast<std::uint64_t>(r.merged.degree()) != expect || !is_valid(r.merged))
                    return {false, where + ": degree " + std::to_string(r.merged.degree()) + " expected " + std::to_string(expect)};
                const Slp chart = type2_chart(sys, g);
                for (const auto& blk : r.blocks)
                    for (const auto& res : type2_block_residuals(chart, blk))
                        if (!res.empty()) return {false, where + ": nonzero residual"};
                ++cases;
            }
    const double el = seconds_since(t0);
    return {el < 60, std::to_string(cases) + " cases, " + fmt_seconds(el)};
}

// ---------------------------------------------------------------- 3

Outcome chebyshev_gcds() {
    for (int d : {2, 4, 6, 8, 10}) {
        const QPoly T = chebyshev(d), dT = derivative(T);
        if (gcd(dT, T + QPoly{Rational(1)}) != monic(chebyshev_poly(d / 2)))
            return {false, "gcd(T', T + 1) at d=" + std::to_string(d)};
        if (!divides(chebyshev_poly(d / 2), dT)) return {false, "T_{d/2} does not divide T' at d=" + std::to_string(d)};
        if (gcd(dT, T - QPoly{Rational(1)}) != monic(exact_div(dT, chebyshev_poly(d / 2))))
            return {false, "gcd(T', T - 1) at d=" + std::to_string(d)};
    }
    return {true, "d = 2, 4, 6, 8, 10"};
}

// ---------------------------------------------------------------- 4, 5

struct CorpusResult {
    Outcome lifting, degree;
};

CorpusResult deformation_corpus() {
    CorpusResult out;
    std::size_t problems = 0, branches = 0;
    int worst = 0;
    std::uint64_t worst_bound = 0;
    auto fail_lift = [&](const std::string& why) {
        if (out.lifting.pass) out.lifting = {false, why};
    };
    auto fail_degree = [&](const std::string& why) {
        if (out.degree.pass) out.degree = {false, why};
    };
    // type 1: random Lagrange systems
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(100 + seed);
        const std::size_t n = 1 + seed % 3;
        const std::size_t s = 1 + (seed / 3) % n;
        std::vector<std::string> polys;
        std::vector<int> degrees;
        for (std::size_t i = 0; i < s; ++i) {
            degrees.push_back(1 + static_cast<int>(rng() % 3));
            if (n == 3 && s >= 2) degrees.back() = std::min(degrees.back(), 2);  // keeps D <= 8 there
            polys.push_back(random_poly(rng, n, degrees.back()));
        }
        const Slp f = parse_system(polys, default_variables(n));
        std::vector<std::size_t> subset(s);
        for (std::size_t i = 0; i < s; ++i) subset[i] = i;
        const auto sys = build_lagrange(f, subset, degrees);
        const StartSystem start = type1_start(s, n, sys.degrees);
        const auto prob = assemble(sys.chart(), start.chart, n, start.D);
        const std::string where = "type-1 seed " + std::to_string(seed);
        std::vector<std::vector<QSeries>> lifted;
        for (const auto& p : enumerate_type1_solutions(start.type1, false)) {
            auto l = newton_lift(prob, p, prob.N);
            for (const auto& st : l.steps)
                if (st.valuation < st.precision) fail_lift(where + ": step record below precision");
            if (!residual_doubling(prob, l.coords)) fail_lift(where + ": residual");
            lifted.push_back(std::move(l.coords));
            ++branches;
        }
        ++problems;
        std::mt19937_64 arng(seed);
        for (int attempt = 0; attempt < 5; ++attempt) {
            try {
                const auto cp = reconstruct_charpoly(charpoly_points(lifted, n, random_alpha(arng, n)), n, prob.D);
                const std::uint64_t bound = n * prob.D;
                if (cp.max_degree() > static_cast<int>(bound))
                    fail_degree(where + ": degree " + std::to_string(cp.max_degree()) + " > " + std::to_string(bound));
                if (cp.max_degree() * static_cast<double>(worst_bound ? worst_bound : 1) >= worst * static_cast<double>(bound)) {
                    worst = cp.max_degree();
                    worst_bound = bound;
                }
                break;
            } catch (const NoReconstruction&) {
                if (attempt == 4) fail_degree(where + ": no reconstruction");
            }
        }
    }
    // type 2: parametric lifting of closed-mode deformations in two variables
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        std::mt19937_64 rng(200 + seed);
        const int d = seed < 2 ? 2 : 4;
        const Slp f = parse(random_poly(rng, 2, d == 2 ? 2 : 3), default_variables(2));
        const auto sys = build_lagrange(f, {0}, {d});
        const int tau = seed % 2 ? -1 : 1;
        const StartSystem start = type2_start(1, 2, d, {tau}, {Rational(0)});
        const auto prob = assemble(sys.chart(), start.chart, 2, start.D);
        const std::string where = "type-2 seed " + std::to_string(seed);
        std::vector<Rational> alpha{Rational(3), Rational(7)};
        const auto t2 = resolve_type2(start.type2, alpha);
        std::vector<detail::BlockPiece> pieces;
        for (const auto& blk : t2.blocks) {
            std::vector<QPoly> pt = parametrization(blk.res);
            for (const auto& m : blk.mu) pt.push_back(QPoly{m});
            detail::lift_split(prob, blk.res.q, pt, pieces);
        }
        for (const auto& piece : pieces) {
            if (!residual_doubling(prob, piece.lifted.coords)) fail_lift(where + ": residual");
            ++branches;
        }
        ++problems;
        std::mt19937_64 arng(seed);
        try {
            const auto outcome = solve_deformation(sys.chart(), sys.num_equations(), start, 2, arng);
            if (outcome.stats.reconstructed_degree > static_cast<int>(2 * prob.D)) fail_degree(where + ": degree above nD");
        } catch (const BadRandomness& e) {
            fail_degree(where + ": " + e.what());
        }
    }
    if (out.lifting.pass)
        out.lifting.detail = std::to_string(problems) + " problems, " + std::to_string(branches) + " lifts checked at every doubling";
    if (out.degree.pass)
        out.degree.detail = std::to_string(problems) + " reconstructions, largest ratio " + std::to_string(worst) + "/" +
                            std::to_string(worst_bound);
    return out;
}

// ---------------------------------------------------------------- 6

Outcome containment() {
    std::size_t instances = 0;
    const std::vector<std::string> X{"x1", "x2"};
    const std::vector<Rational> beta{Rational(5), Rational(-13)};
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        std::mt19937_64 rng(300 + seed);
        Slp target;
        std::size_t x_only = 2;
        StartSystem start;
        if (seed % 2 == 0) {
            const int d1 = 1 + static_cast<int>(seed / 2 % 3), d2 = 2 + static_cast<int>(seed % 4 == 0);
            const Slp f = parse_system({random_poly(rng, 2, d1), random_poly(rng, 2, d2)}, X);
            const auto sys = build_lagrange(f, {0, 1}, {d1, d2});
            target = sys.chart();
            start = type1_start(2, 2, sys.degrees);
        } else {
            const int d = 2 + static_cast<int>(seed / 2 % 2);
            const Slp f = parse(random_poly(rng, 2, d), X);
            const auto sys = build_lagrange(f, {0}, {d});
            target = sys.chart();
            start = type1_start(1, 2, sys.degrees);
        }
        const auto out = solve_deformation(target, x_only, start, 2, rng);
        const QPoly R = planar_resultant(target, beta);
        if (R.empty()) continue;  // positive-dimensional: nothing to compare
        ++instances;
        if (!divides(squarefree_part(R), project_resolution(out.res, beta)))
            return {false, "seed " + std::to_string(seed) + ": an isolated solution is missing"};
    }
    return {instances >= 10, std::to_string(instances) + " instances against the resultant"};
}

// ---------------------------------------------------------------- 7

Outcome regular_end_to_end() {
    std::size_t complete = 0, runs = 0;
    double slowest = 0;
    std::string first_gap;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(400 + seed);
        Job job;
        const std::size_t m = 1 + seed % 2;
        for (std::size_t i = 0; i < m; ++i) job.polynomials.push_back(random_poly(rng, 2, 2 + static_cast<int>(rng() % 2)));
        job.seed = seed;
        job.list_conditions = true;
        const auto t0 = Clock::now();
        Document doc;
        try {
            doc = run_job(job);
        } catch (const BadRandomness& e) {
            ++runs;
            if (first_gap.empty()) first_gap = "seed " + std::to_string(seed) + ": " + e.what();
            continue;
        }
        slowest = std::max(slowest, seconds_since(t0));
        ++runs;
        try {
            verify_document(doc);
        } catch (const Disagreement& e) {
            return {false, "seed " + std::to_string(seed) + " unsound: " + e.what()};
        }
        const Slp f = parse_system(doc.polynomials, doc.variables);
        const auto grid = grid_feasible(f, Rational(4), make_rational(1, 8));
        const auto got = rendered(doc.conditions);
        bool ok = true;
        for (const auto& [v, pt] : grid.vectors)
            if (!got.count(render(v, ConditionKind::Strict))) {
                ok = false;
                if (first_gap.empty()) first_gap = "seed " + std::to_string(seed) + " misses " + render(v, ConditionKind::Strict);
            }
        complete += ok;
    }
    const bool pass = complete * 100 >= runs * 95 && slowest < 300;
    std::string detail = std::to_string(complete) + "/" + std::to_string(runs) + " complete, all sound, slowest " + fmt_seconds(slowest);
    if (!first_gap.empty()) detail += "; " + first_gap;
    return {pass, detail};
}

// ---------------------------------------------------------------- 8

struct Fixture {
    std::string name;
    std::vector<std::string> polynomials;
    std::set<std::string> conditions;
};

std::vector<Fixture> read_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Fixture> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto sp = line.find(' ');
        const std::string key = line.substr(0, sp), rest = sp == std::string::npos ? "" : line.substr(sp + 1);
        if (key == "fixture") out.push_back({rest, {}, {}});
        else if (key == "polynomial") out.back().polynomials.push_back(rest);
        else if (key == "condition") out.back().conditions.insert(rest);
    }
    return out;
}

Outcome closed_fixtures() {
    std::string detail;
    for (const auto& fx : read_fixtures(std::string(HOMSIGN_FIXTURES) + "/closed_conditions.txt")) {
        Job job;
        job.polynomials = fx.polynomials;
        job.mode = Mode::Closed;
        job.list_conditions = true;
        const auto t0 = Clock::now();
        const Document doc = run_job(job);
        const double el = seconds_since(t0);
        verify_document(doc);
        const auto got = rendered(doc.conditions);
        if (got != fx.conditions || el >= 300) {
            std::string list;
            for (const auto& c : got) list += " " + c;
            return {false, fx.name + " gave" + list + " in " + fmt_seconds(el)};
        }
        // the grid only sees closed conditions that really hold
        const Slp f = parse_system(doc.polynomials, doc.variables);
        for (const auto& [v, pt] : grid_feasible(f, Rational(3), make_rational(1, 4)).vectors)
            for (const auto& c : closed_vectors(v))
                if (!got.count(render(c, ConditionKind::Closed))) return {false, fx.name + ": grid finds " + render(c, ConditionKind::Closed)};
        detail += (detail.empty() ? "" : ", ") + fx.name + " " + fmt_seconds(el);
    }
    return {true, detail};
}

// ---------------------------------------------------------------- 9

Outcome bivariate_mode() {
    const std::vector<std::string> X{"x1", "x2"};
    const Slp circle = parse("x1^2 + x2^2 - 1", X);
    struct Case {
        std::string name;
        std::vector<std::string> polys;
    };
    const std::vector<Case> cases{{"non-reduced circle", {"(x1^2 + x2^2 - 1)^2"}},
                                  {"tangent circles", {"(x1 - 1)^2 + x2^2 - 1", "(x1 + 1)^2 + x2^2 - 1"}}};
    std::string detail;
    bool pass = true;
    for (const auto& cs : cases) {
        std::size_t good = 0, runs = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed, ++runs) {
            Job job;
            job.polynomials = cs.polys;
            job.mode = Mode::Bivariate;
            job.seed = seed;
            job.list_conditions = true;
            Document doc;
            try {
                doc = run_job(job);
                verify_document(doc);
            } catch (const std::exception&) {
                continue;
            }
            const Slp f = parse_system(doc.polynomials, doc.variables);
            bool ok = true;
            for (const auto& [v, pt] : grid_feasible(f, Rational(3), make_rational(1, 4)).vectors) ok &= meets_closure(doc.conditions, v);
            // the singular locus itself: real points on the circle, or the
            // tangency (0, 0) from the pair system
            bool locus = false;
            for (const auto& c : doc.conditions) {
                for (const auto& w : c.witnesses) {
                    const auto& tr = doc.points.resolutions[w.resolution];
                    if (tr.prov.kind != Provenance::Kind::Critical || !w.point.empty()) continue;
                    if (cs.polys.size() == 1) locus |= compose_mod(circle, tr.res)[0].empty();
                    else locus |= tr.prov.subset.size() == 2 && c.signs == std::vector<int>{0, 0};
                }
            }
            good += ok && locus;
        }
        pass &= good * 100 >= runs * 95;
        detail += (detail.empty() ? "" : ", ") + cs.name + " " + std::to_string(good) + "/" + std::to_string(runs);
    }
    return {pass, detail};
}

// ---------------------------------------------------------------- 10

Outcome single_mode() {
    const std::string annulus = "(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 4)";
    std::size_t good = 0, runs = 0, rational = 0;
    double slowest = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed, ++runs) {
        Job job;
        job.polynomials = {annulus};
        job.mode = Mode::Single;
        job.seed = seed;
        job.list_conditions = true;
        const auto t0 = Clock::now();
        Document doc;
        try {
            doc = run_job(job);
        } catch (const BadRandomness&) {
            continue;
        }
        slowest = std::max(slowest, seconds_since(t0));
        const Slp f = parse_system(doc.polynomials, doc.variables);
        std::set<int> verified;
        for (const auto& c : doc.conditions)
            for (const auto& w : c.witnesses)
                if (witness_realizes(witness_signs(doc.points, f, w), c)) {
                    verified.insert(c.signs[0]);
                    rational += !w.point.empty();
                }
        good += verified.size() == 3;
    }
    return {good * 100 >= runs * 95 && slowest < 300,
            std::to_string(good) + "/" + std::to_string(runs) + " seeds reach all three regions, " + std::to_string(rational) +
                " rational witnesses, slowest " + fmt_seconds(slowest)};
}

// ---------------------------------------------------------------- 11

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    struct Case {
        std::vector<std::string> polys;
        Mode mode;
    };
    const std::vector<Case> cases{{{"x1^2 + x2^2 - 1", "x1*x2 - 1/4"}, Mode::Regular},
                                  {{"(x1 - 2)^2 + x2^2 - 1", "(x1 + 2)^2 + x2^2 - 1"}, Mode::Closed},
                                  {{"(x1 - 1)^2 + x2^2 - 1", "(x1 + 1)^2 + x2^2 - 1"}, Mode::Bivariate}};
    std::size_t compared = 0;
    for (const auto& cs : cases) {
        Job job;
        job.polynomials = cs.polys;
        job.mode = cs.mode;
        job.seed = 42;
        job.list_conditions = true;
        const std::string base = to_string(run_job(job));
        for (std::uint64_t sched : {0u, 1u, 2u, 3u}) {
            job.threads = sched == 0 ? 1 : 4;
            job.schedule_seed = sched;
            if (to_string(run_job(job)) != base) return {false, to_string(cs.mode) + " differs under schedule " + std::to_string(sched)};
            ++compared;
        }
    }
    // the command line tool writes the same bytes with one and four threads
    const std::string a = "acceptance_run_a.txt", b = "acceptance_run_b.txt";
    const std::string cmd = std::string(HOMSIGN_CLI) + " --mode closed --seed 7 --list-conditions \"x1^2 + x2^2 - 1\"";
    if (std::system((cmd + " --threads 1 --out " + a).c_str()) != 0 || std::system((cmd + " --threads 4 --out " + b).c_str()) != 0)
        return {false, "command line run failed"};
    const bool same = slurp(a) == slurp(b) && !slurp(a).empty();
    std::remove(a.c_str());
    std::remove(b.c_str());
    if (!same) return {false, "command line output differs between thread counts"};
    return {true, std::to_string(compared) + " in-process reruns and one command line pair byte-identical"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"type-1 Bezout counts", type1_counts},
        {"type-2 counts and residuals", type2_counts},
        {"Chebyshev gcd identities", chebyshev_gcds},
    };
    // criteria 4 and 5 share one corpus
    std::optional<CorpusResult> corpus;
    auto corpus_once = [&]() -> const CorpusResult& {
        if (!corpus) corpus = deformation_corpus();
        return *corpus;
    };
    criteria.push_back({"lifting residuals", [&] { return corpus_once().lifting; }});
    criteria.push_back({"reconstruction degree bound", [&] { return corpus_once().degree; }});
    criteria.push_back({"isolated-point containment", containment});
    criteria.push_back({"regular mode end to end", regular_end_to_end});
    criteria.push_back({"closed mode fixtures", closed_fixtures});
    criteria.push_back({"bivariate mode", bivariate_mode});
    criteria.push_back({"single-polynomial mode", single_mode});
    criteria.push_back({"determinism", determinism});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": " << o.detail
                  << " [" << fmt_seconds(seconds_since(t0)) << "]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
