#pragma once

// One end-to-end run: parse, sample, list conditions, optionally verify.

#include <cstdint>
#include <regex>
#include <string>
#include <vector>

#include "document.hpp"
#include "mpoly.hpp"
#include "oracle.hpp"
#include "sampler.hpp"
#include "signs.hpp"
#include "slp.hpp"

namespace homsign {

struct Job {
    std::vector<std::string> polynomials;
    std::vector<std::string> variables;  // empty: x1..xn inferred from the text
    std::vector<int> degrees;            // empty: computed by expansion
    Mode mode = Mode::Regular;
    std::uint64_t seed = 1;
    bool list_conditions = false;
    std::string sigma;
    unsigned threads = 1;
    std::uint64_t schedule_seed = 0;
};

/// Polynomial `index` failed to parse.
struct JobParseError : ParseError {
    JobParseError(std::size_t index, const ParseError& e)
        : ParseError("polynomial " + std::to_string(index + 1) + ": " + e.reason, e.position), index(index) {}
    std::size_t index;
};

inline std::vector<std::string> infer_variables(const std::vector<std::string>& polys) {
    static const std::regex var(R"(x(\d+))");
    std::size_t n = 0;
    for (const auto& p : polys)
        for (auto it = std::sregex_iterator(p.begin(), p.end(), var); it != std::sregex_iterator(); ++it)
            n = std::max<std::size_t>(n, std::stoul((*it)[1].str()));
    return default_variables(std::max<std::size_t>(n, 1));
}

inline Slp parse_job(const Job& job, std::vector<std::string>& vars) {
    vars = job.variables.empty() ? infer_variables(job.polynomials) : job.variables;
    std::vector<Slp> parts;
    for (std::size_t i = 0; i < job.polynomials.size(); ++i) {
        try {
            parts.push_back(parse(job.polynomials[i], vars));
        } catch (const ParseError& e) {
            throw JobParseError(i, e);
        }
    }
    return concat(parts, vars.size());
}

inline std::vector<int> total_degrees(const Slp& f) {
    std::vector<int> d;
    for (const auto& p : densify(f)) d.push_back(std::max(0, p.total_degree()));
    return d;
}

/// Conditions reported for the given mode: strict with derived neighbours in
/// regular mode, closed in closed mode, strict otherwise; single mode also
/// checks rational points next to the algebraic ones.
inline std::pair<ConditionKind, std::vector<SignCondition>> conditions_for(Mode mode, const SamplePointSet& pts, const Slp& f) {
    switch (mode) {
        case Mode::Regular: return {ConditionKind::Strict, expand_equalities(list_conditions(pts, f, ConditionKind::Strict))};
        case Mode::Closed: return {ConditionKind::Closed, list_conditions(pts, f, ConditionKind::Closed)};
        case Mode::Bivariate: return {ConditionKind::Strict, list_conditions(pts, f, ConditionKind::Strict)};
        case Mode::Single: return {ConditionKind::Strict, list_conditions(pts, f, ConditionKind::Strict, true)};
    }
    return {};
}

inline Document run_job(const Job& job) {
    Document doc;
    const Slp f = parse_job(job, doc.variables);
    doc.mode = job.mode;
    doc.seed = job.seed;
    doc.polynomials = job.polynomials;
    doc.degrees = job.degrees.empty() ? total_degrees(f) : job.degrees;
    SamplerConfig cfg;
    cfg.mode = job.mode;
    cfg.seed = job.seed;
    cfg.sigma = job.sigma;
    cfg.threads = job.threads;
    cfg.schedule_seed = job.schedule_seed;
    doc.points = run_sampler(f, doc.degrees, cfg).points;
    doc.kind = job.mode == Mode::Closed ? ConditionKind::Closed : ConditionKind::Strict;
    if (job.list_conditions) std::tie(doc.kind, doc.conditions) = conditions_for(job.mode, doc.points, f);
    return doc;
}

/// Independent re-check of a document: resolution validity, dual-path signs
/// at every real point, and every witness against its condition. Throws
/// Disagreement on the first failure.
inline void verify_document(const Document& doc) {
    const Slp f = parse_system(doc.polynomials, doc.variables);
    for (std::size_t r = 0; r < doc.points.resolutions.size(); ++r) {
        const auto& res = doc.points.resolutions[r].res;
        if (!is_valid(res)) throw Disagreement("resolution " + std::to_string(r) + " is not valid");
        verify_point_signs(res, f);
    }
    for (const auto& c : doc.conditions) {
        for (const auto& w : c.witnesses)
            if (!witness_realizes(witness_signs(doc.points, f, w), c))
                throw Disagreement("witness " + std::to_string(w.resolution) + ":" + std::to_string(w.root) +
                                   " does not realize " + render(c.signs, c.kind));
    }
}

}  // namespace homsign
