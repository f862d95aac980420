#pragma once

// Sparse multivariate polynomials over Q, used to densify small programs
// (degree bounds, test oracles). Not meant for large expansions.

#include <map>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"
#include "slp.hpp"

namespace homsign {

class MPoly {
public:
    using Exponent = std::vector<unsigned>;

    MPoly() = default;
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Rational& c) {
        MPoly p(nvars);
        if (c != 0) p.terms_[Exponent(nvars, 0)] = c;
        return p;
    }
    static MPoly variable(std::size_t nvars, std::size_t i) {
        MPoly p(nvars);
        Exponent e(nvars, 0);
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (auto x : e) s += static_cast<int>(x);
            d = std::max(d, s);
        }
        return d;
    }

    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(MPoly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly out(std::max(a.nvars_, b.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Formal partial derivative.
    MPoly derivative(std::size_t i) const {
        MPoly out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent f(e);
            f[i] -= 1;
            out.add_term(f, c * e[i]);
        }
        return out;
    }

    Rational operator()(const std::vector<Rational>& x) const {
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i) t *= pow(x[i], e[i]);
            acc += t;
        }
        return acc;
    }

private:
    void add_term(const Exponent& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t nvars_ = 0;
    std::map<Exponent, Rational> terms_;
};

inline MPoly zero_like(const MPoly& p) { return MPoly(p.nvars()); }
inline MPoly one_like(const MPoly& p) { return MPoly::constant(p.nvars(), Rational(1)); }
inline MPoly from_rational(const MPoly& p, const Rational& c) { return MPoly::constant(p.nvars(), c); }
inline bool is_zero(const MPoly& p) { return p.empty(); }

/// Dense expansion of every output.
inline std::vector<MPoly> densify(const Slp& p) {
    std::vector<MPoly> vars;
    for (std::size_t i = 0; i < p.num_inputs; ++i) vars.push_back(MPoly::variable(p.num_inputs, i));
    return eval(p, vars, MPoly(p.num_inputs));
}

/// Univariate restriction helper: the polynomial in U obtained by evaluating
/// over Q[U] with the given inputs.
inline std::vector<QPoly> eval_univariate(const Slp& p, const std::vector<QPoly>& inputs) {
    return eval(p, inputs, QPoly{});
}

}  // namespace homsign
