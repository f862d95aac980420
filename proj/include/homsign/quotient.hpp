#pragma once

// Arithmetic in Q[U]/(q(U)). The modulus is held by a shared immutable
// QuotientRing; elements of different rings never mix.

#include <memory>
#include <utility>

#include "errors.hpp"
#include "poly.hpp"

namespace homsign {

/// Raised when an element shares a factor with the modulus. `factor` is the
/// monic gcd, used upstream to split the modulus.
struct NotInvertible : std::runtime_error {
    explicit NotInvertible(QPoly g) : std::runtime_error("element not invertible modulo q"), factor(std::move(g)) {}
    QPoly factor;
};

class QuotientRing {
public:
    explicit QuotientRing(const QPoly& modulus) : q_(monic(modulus)) {
        if (q_.degree() < 1) throw std::invalid_argument("quotient modulus must have positive degree");
    }
    const QPoly& modulus() const { return q_; }
    int degree() const { return q_.degree(); }

    /// Remainder modulo the monic modulus, in place.
    void reduce(std::vector<Rational>& v) const {
        const std::size_t d = static_cast<std::size_t>(q_.degree());
        for (std::size_t k = v.size(); k-- > d;) {
            if (v[k] == 0) continue;
            const Rational f = v[k];
            for (std::size_t j = 0; j < d; ++j)
                if (q_[j] != 0) v[k - d + j] -= f * q_[j];
        }
        if (v.size() > d) v.resize(d);
    }

private:
    QPoly q_;
};

class QuotientElement {
public:
    QuotientElement() = default;
    QuotientElement(std::shared_ptr<const QuotientRing> ring, QPoly rep) : ring_(std::move(ring)) {
        std::vector<Rational> v = rep.coeffs();
        ring_->reduce(v);
        rep_ = QPoly(std::move(v));
    }

    const QPoly& rep() const { return rep_; }
    const std::shared_ptr<const QuotientRing>& ring() const { return ring_; }

    QuotientElement& operator+=(const QuotientElement& o) {
        check(o);
        rep_ += o.rep_;
        return *this;
    }
    QuotientElement& operator-=(const QuotientElement& o) {
        check(o);
        rep_ -= o.rep_;
        return *this;
    }
    QuotientElement& operator*=(const QuotientElement& o) {
        check(o);
        if (rep_.empty() || o.rep_.empty()) {
            rep_ = QPoly{};
            return *this;
        }
        std::vector<Rational> v(rep_.size() + o.rep_.size() - 1);
        for (std::size_t i = 0; i < rep_.size(); ++i) {
            if (rep_[i] == 0) continue;
            for (std::size_t j = 0; j < o.rep_.size(); ++j) v[i + j] += rep_[i] * o.rep_[j];
        }
        ring_->reduce(v);
        rep_ = QPoly(std::move(v));
        return *this;
    }
    QuotientElement& operator*=(const Rational& s) {
        rep_ *= s;
        return *this;
    }

    friend QuotientElement operator+(QuotientElement a, const QuotientElement& b) { return a += b; }
    friend QuotientElement operator-(QuotientElement a, const QuotientElement& b) { return a -= b; }
    friend QuotientElement operator*(QuotientElement a, const QuotientElement& b) { return a *= b; }
    friend QuotientElement operator-(QuotientElement a) {
        a.rep_ = -a.rep_;
        return a;
    }
    friend bool operator==(const QuotientElement& a, const QuotientElement& b) {
        return a.rep_ == b.rep_ && a.ring_->modulus() == b.ring_->modulus();
    }

    /// Inverse via extended Euclid; throws NotInvertible with the shared factor.
    QuotientElement inverse() const {
        if (rep_.empty()) throw NotInvertible(ring_->modulus());
        XgcdResult r = xgcd(rep_, ring_->modulus());
        if (r.g.degree() > 0) throw NotInvertible(r.g);
        return QuotientElement(ring_, r.s);
    }

private:
    void check(const QuotientElement& o) const {
        if (ring_ != o.ring_ && !(ring_->modulus() == o.ring_->modulus()))
            throw RingMismatch("quotient elements over different moduli");
    }

    std::shared_ptr<const QuotientRing> ring_;
    QPoly rep_;
};

inline QuotientElement zero_like(const QuotientElement& e) { return QuotientElement(e.ring(), QPoly{}); }
inline QuotientElement one_like(const QuotientElement& e) { return QuotientElement(e.ring(), QPoly{Rational(1)}); }
inline QuotientElement from_rational(const QuotientElement& e, const Rational& c) {
    return QuotientElement(e.ring(), QPoly{c});
}
inline bool is_zero(const QuotientElement& e) { return e.rep().empty(); }
inline void scale_by(QuotientElement& e, const Rational& s) { e *= s; }

inline std::shared_ptr<const QuotientRing> make_quotient_ring(const QPoly& modulus) {
    return std::make_shared<const QuotientRing>(modulus);
}

/// First n coefficients of the product of two series over Q[U]/(q): the
/// convolution runs over integers with a common denominator and each
/// output coefficient is reduced once.
inline std::vector<QuotientElement> truncated_product(const std::vector<QuotientElement>& a,
                                                      const std::vector<QuotientElement>& b, std::size_t n) {
    const auto& ring = a[0].ring();
    if (!(ring->modulus() == b[0].ring()->modulus())) throw RingMismatch("quotient elements over different moduli");
    const std::size_t d = static_cast<std::size_t>(ring->degree());
    auto numerators = [d](const std::vector<QuotientElement>& v, std::vector<std::vector<Integer>>& out) {
        Integer l = 1;
        for (const auto& e : v)
            for (const auto& c : e.rep().coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        out.assign(v.size(), {});
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& c = v[i].rep().coeffs();
            if (c.empty()) continue;
            out[i].resize(d);
            for (std::size_t j = 0; j < c.size(); ++j) out[i][j] = l / c[j].get_den() * c[j].get_num();
        }
        return l;
    };
    std::vector<std::vector<Integer>> ia, ib;
    const Integer den = numerators(a, ia) * numerators(b, ib);
    std::vector<QuotientElement> out;
    out.reserve(n);
    std::vector<Integer> acc(2 * d);
    for (std::size_t k = 0; k < n; ++k) {
        bool any = false;
        for (auto& x : acc) x = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            const auto &x = ia[i], &y = ib[k - i];
            if (x.empty() || y.empty()) continue;
            any = true;
            for (std::size_t p = 0; p < d; ++p) {
                if (x[p] == 0) continue;
                for (std::size_t r = 0; r < d; ++r) mpz_addmul(acc[p + r].get_mpz_t(), x[p].get_mpz_t(), y[r].get_mpz_t());
            }
        }
        if (!any) {
            out.push_back(zero_like(a[0]));
            continue;
        }
        std::vector<Rational> v(2 * d - 1);
        for (std::size_t p = 0; p + 1 < 2 * d; ++p) {
            if (acc[p] == 0) continue;
            v[p] = Rational(acc[p], den);
            v[p].canonicalize();
        }
        out.emplace_back(ring, QPoly(std::move(v)));
    }
    return out;
}

/// The class of U in Q[U]/(q).
inline QuotientElement generator(const std::shared_ptr<const QuotientRing>& ring) {
    return QuotientElement(ring, variable_poly());
}

}  // namespace homsign
