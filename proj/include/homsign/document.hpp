#pragma once

// Plain-text certificate: inputs, change of variables, base point, every
// resolution with exact coefficients and provenance, and the sign
// conditions with their witnesses. Fields are written in a fixed order.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sampler.hpp"
#include "signs.hpp"

namespace homsign {

struct Document {
    Mode mode = Mode::Regular;
    std::uint64_t seed = 0;
    std::vector<std::string> variables;
    std::vector<std::string> polynomials;
    std::vector<int> degrees;
    SamplePointSet points;
    ConditionKind kind = ConditionKind::Strict;
    std::vector<SignCondition> conditions;

    friend bool operator==(const Document&, const Document&) = default;
};

struct DocumentError : std::runtime_error {
    DocumentError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

namespace detail {

inline std::string join_rationals(const std::vector<Rational>& v, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += to_string(v[i]);
    }
    return s;
}

inline void write_poly(std::ostream& os, const char* key, const QPoly& p) {
    os << key << ' ' << p.size();
    for (const auto& c : p.coeffs()) os << ' ' << to_string(c);
    os << '\n';
}

inline const char* kind_name(Provenance::Kind k) {
    switch (k) {
        case Provenance::Kind::Critical: return "critical";
        case Provenance::Kind::Slice: return "slice";
        case Provenance::Kind::Point: return "point";
    }
    return "?";
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace detail

inline void write_document(std::ostream& os, const Document& doc) {
    using detail::join_rationals;
    const auto& pts = doc.points;
    os << "homsign-document 1\n";
    os << "mode " << to_string(doc.mode) << '\n';
    os << "seed " << doc.seed << '\n';
    os << "variables";
    for (const auto& v : doc.variables) os << ' ' << v;
    os << '\n';
    os << "polynomials " << doc.polynomials.size() << '\n';
    for (const auto& p : doc.polynomials) os << "polynomial " << p << '\n';
    os << "degrees";
    for (int d : doc.degrees) os << ' ' << d;
    os << '\n';
    os << "dimension " << pts.n << '\n';
    for (std::size_t i = 0; i < pts.M.rows(); ++i) {
        os << "matrix-row";
        for (std::size_t j = 0; j < pts.M.cols(); ++j) os << ' ' << to_string(pts.M(i, j));
        os << '\n';
    }
    os << "point " << join_rationals(pts.p) << '\n';
    os << "resolutions " << pts.resolutions.size() << '\n';
    for (std::size_t r = 0; r < pts.resolutions.size(); ++r) {
        const auto& tr = pts.resolutions[r];
        os << "resolution " << r << " kind=" << detail::kind_name(tr.prov.kind) << " level=" << tr.prov.level << " subset=";
        for (std::size_t i = 0; i < tr.prov.subset.size(); ++i) os << (i ? "," : "") << tr.prov.subset[i] + 1;
        os << " tau=";
        for (std::size_t i = 0; i < tr.prov.tau.size(); ++i) os << (i ? "," : "") << (tr.prov.tau[i] > 0 ? '+' : '-');
        os << " degree=" << tr.res.degree() << '\n';
        detail::write_poly(os, "q", tr.res.q);
        detail::write_poly(os, "qtilde", tr.res.qtilde);
        for (const auto& w : tr.res.w) detail::write_poly(os, "w", w);
    }
    os << "conditions " << (doc.kind == ConditionKind::Strict ? "strict" : "closed") << ' ' << doc.conditions.size() << '\n';
    for (const auto& c : doc.conditions) {
        os << "condition " << render(c.signs, c.kind) << ' ' << (c.derived ? "derived" : "witnessed");
        for (const auto& w : c.witnesses) {
            os << ' ' << w.resolution << ':' << w.root;
            if (!w.point.empty()) os << '@' << join_rationals(w.point, ';');
        }
        os << '\n';
    }
    os << "end\n";
}

inline std::string to_string(const Document& doc) {
    std::ostringstream os;
    write_document(os, doc);
    return os.str();
}

inline Document read_document(std::istream& is) {
    Document doc;
    std::size_t lineno = 0;
    std::string line;
    auto next = [&](const std::string& key) {
        if (!std::getline(is, line)) throw DocumentError(lineno, "unexpected end, expected " + key);
        ++lineno;
        if (line.compare(0, key.size(), key) != 0 || (line.size() > key.size() && line[key.size()] != ' '))
            throw DocumentError(lineno, "expected " + key);
        return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
    };
    auto rationals = [&](const std::string& s, char sep = ' ') {
        std::vector<Rational> v;
        for (const auto& tok : detail::split(s, sep)) {
            try {
                v.push_back(parse_rational(tok));
            } catch (const std::exception& e) {
                throw DocumentError(lineno, e.what());
            }
        }
        return v;
    };
    auto poly = [&](const std::string& key) {
        auto v = rationals(next(key));
        if (v.empty() || v[0] != static_cast<long>(v.size() - 1)) throw DocumentError(lineno, "bad coefficient count");
        return QPoly(std::vector<Rational>(v.begin() + 1, v.end()));
    };
    auto number = [&](const std::string& s) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw DocumentError(lineno, "expected a number");
        }
    };

    if (next("homsign-document") != "1") throw DocumentError(lineno, "unsupported version");
    try {
        doc.mode = parse_mode(next("mode"));
    } catch (const std::invalid_argument& e) {
        throw DocumentError(lineno, e.what());
    }
    doc.seed = number(next("seed"));
    doc.variables = detail::split(next("variables"), ' ');
    const auto np = number(next("polynomials"));
    for (std::size_t i = 0; i < np; ++i) doc.polynomials.push_back(next("polynomial"));
    for (const auto& d : detail::split(next("degrees"), ' ')) doc.degrees.push_back(static_cast<int>(number(d)));
    auto& pts = doc.points;
    pts.n = number(next("dimension"));
    pts.M = QMatrix(pts.n, pts.n, Rational(0));
    for (std::size_t i = 0; i < pts.n; ++i) {
        auto row = rationals(next("matrix-row"));
        if (row.size() != pts.n) throw DocumentError(lineno, "matrix row length");
        for (std::size_t j = 0; j < pts.n; ++j) pts.M(i, j) = row[j];
    }
    pts.p = rationals(next("point"));
    const auto nr = number(next("resolutions"));
    for (std::size_t r = 0; r < nr; ++r) {
        TaggedResolution tr;
        const auto fields = detail::split(next("resolution"), ' ');
        for (std::size_t f = 1; f < fields.size(); ++f) {
            const auto eq = fields[f].find('=');
            const std::string key = fields[f].substr(0, eq), val = eq == std::string::npos ? "" : fields[f].substr(eq + 1);
            if (key == "kind") {
                if (val == "critical") tr.prov.kind = Provenance::Kind::Critical;
                else if (val == "slice") tr.prov.kind = Provenance::Kind::Slice;
                else if (val == "point") tr.prov.kind = Provenance::Kind::Point;
                else throw DocumentError(lineno, "unknown provenance kind");
            } else if (key == "level") {
                tr.prov.level = static_cast<int>(number(val));
            } else if (key == "subset") {
                for (const auto& s : detail::split(val, ',')) tr.prov.subset.push_back(number(s) - 1);
            } else if (key == "tau") {
                for (const auto& s : detail::split(val, ',')) tr.prov.tau.push_back(s == "+" ? 1 : -1);
            }
        }
        tr.res.q = poly("q");
        tr.res.qtilde = poly("qtilde");
        for (std::size_t k = 0; k < pts.n; ++k) tr.res.w.push_back(poly("w"));
        pts.resolutions.push_back(std::move(tr));
    }
    const auto head = detail::split(next("conditions"), ' ');
    if (head.size() != 2) throw DocumentError(lineno, "bad conditions header");
    doc.kind = head[0] == "closed" ? ConditionKind::Closed : ConditionKind::Strict;
    const auto nc = number(head[1]);
    for (std::size_t c = 0; c < nc; ++c) {
        const auto fields = detail::split(next("condition"), ' ');
        if (fields.size() < 2) throw DocumentError(lineno, "bad condition");
        SignCondition sc;
        sc.kind = doc.kind;
        try {
            sc.signs = parse_signs(fields[0], doc.kind);
        } catch (const std::invalid_argument& e) {
            throw DocumentError(lineno, e.what());
        }
        sc.derived = fields[1] == "derived";
        for (std::size_t f = 2; f < fields.size(); ++f) {
            Witness w;
            const auto at = fields[f].find('@');
            const auto ref = fields[f].substr(0, at);
            const auto colon = ref.find(':');
            if (colon == std::string::npos) throw DocumentError(lineno, "bad witness");
            w.resolution = number(ref.substr(0, colon));
            w.root = number(ref.substr(colon + 1));
            if (at != std::string::npos) w.point = rationals(fields[f].substr(at + 1), ';');
            sc.witnesses.push_back(std::move(w));
        }
        doc.conditions.push_back(std::move(sc));
    }
    next("end");
    return doc;
}

inline Document parse_document(const std::string& text) {
    std::istringstream is(text);
    return read_document(is);
}

}  // namespace homsign
