#pragma once

// Small dense matrices over the library's coefficient rings. Elimination
// needs an `inverse_of` hook for the pivot ring; quotient-ring pivots that
// are zero divisors surface as NotInvertible.

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "quotient.hpp"
#include "rational.hpp"

namespace homsign {

template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const R& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const R& like) {
        Matrix m(n, n, zero_like(like));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(like);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_, zero_like(a.a_[0]));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    std::vector<R> apply(const std::vector<R>& v) const {
        std::vector<R> out(rows_, zero_like(v[0]));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<R> a_;
};

using QMatrix = Matrix<Rational>;

inline Rational inverse_of(const Rational& x) {
    if (x == 0) throw SingularMatrix();
    return 1 / x;
}
inline QuotientElement inverse_of(const QuotientElement& x) { return x.inverse(); }

/// Gauss-Jordan inverse. The first nonzero entry of each column is the pivot.
template <class R>
Matrix<R> inverse(Matrix<R> a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<R> inv = Matrix<R>::identity(n, a(0, 0));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a(p, c))) ++p;
        if (p == n) throw SingularMatrix();
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const R piv = inverse_of(a(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= piv;
            inv(c, j) *= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || is_zero(a(i, c))) continue;
            const R f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Solves a x = b over Q.
inline std::vector<Rational> solve(const QMatrix& a, const std::vector<Rational>& b) {
    const std::size_t n = a.rows();
    QMatrix m(n, n + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n) = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw SingularMatrix();
        if (p != c)
            for (std::size_t j = 0; j <= n; ++j) std::swap(m(p, j), m(c, j));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            const Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = m(i, n);
        for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
        x[i] = acc / m(i, i);
    }
    return x;
}

inline Rational determinant(QMatrix a) {
    const std::size_t n = a.rows();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Fraction-free (Bareiss) determinant over Q[U].
inline QPoly determinant(Matrix<QPoly> a) {
    const std::size_t n = a.rows();
    if (n == 0) return QPoly{Rational(1)};
    QPoly prev{Rational(1)};
    bool negate = false;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).empty()) ++p;
        if (p == n) return {};
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            negate = !negate;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                a(i, j) = exact_div(a(c, c) * a(i, j) - a(i, c) * a(c, j), prev);
            a(i, c) = QPoly{};
        }
        prev = a(c, c);
    }
    QPoly d = a(n - 1, n - 1);
    return negate ? -d : d;
}

/// The Cauchy matrix A_{ik} = 1 / (a_i + k) restricted to the given columns k.
inline QMatrix cauchy_matrix(const std::vector<Rational>& offsets, const std::vector<int>& columns) {
    QMatrix m(offsets.size(), columns.size(), Rational(0));
    for (std::size_t i = 0; i < offsets.size(); ++i)
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const Rational den = offsets[i] + columns[j];
            if (den == 0) throw SingularMatrix();
            m(i, j) = 1 / den;
        }
    return m;
}

/// Solves sum_k x_k / (a_i + k) = b_i, k = 1..s, by exact elimination.
inline std::vector<Rational> cauchy_solve(const std::vector<Rational>& offsets, const std::vector<Rational>& rhs) {
    std::vector<int> cols(offsets.size());
    for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = static_cast<int>(k) + 1;
    return solve(cauchy_matrix(offsets, cols), rhs);
}

}  // namespace homsign
