#pragma once

// Dense matrices over an exact field type T (Scalar or RatFun) with
// Gaussian elimination. T needs +, -, *, /, is_zero() and a zero default.

#include <optional>
#include <utility>
#include <vector>

#include "diffirr/errors.hpp"

namespace diffirr {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n, const T& one) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
    }
    void set_row(std::size_t i, const std::vector<T>& r) {
        if (r.size() != cols_) throw BadDimension("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw BadDimension("matrix product dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    const std::vector<T>& data() const { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

namespace linalg {

/// Row vector times matrix.
template <class T>
std::vector<T> vec_mul(const std::vector<T>& v, const Matrix<T>& m) {
    if (v.size() != m.rows()) throw BadDimension("vector-matrix dimension mismatch");
    std::vector<T> r(m.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) r[j] += v[i] * m(i, j);
    }
    return r;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return rref(m).size();
}

/// Determinant by elimination.
template <class T>
T determinant(Matrix<T> m) {
    if (m.rows() != m.cols()) throw BadDimension("determinant of a non-square matrix");
    T det(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return T();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        const T inv = T(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const T f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!m(c, j).is_zero()) m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return det;
}

/// Basis of the right nullspace {v : m v = 0}, one vector per free column,
/// with a 1 in that column.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols());
        v[f] = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r)
            if (!m(r, f).is_zero()) v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// The row vector c with c * m = b for square invertible m; nullopt when singular.
template <class T>
std::optional<std::vector<T>> solve_left(const Matrix<T>& m, const std::vector<T>& b) {
    const std::size_t n = m.rows();
    if (m.cols() != n || b.size() != n) throw BadDimension("solve_left dimension mismatch");
    // m^T c^T = b^T, augmented.
    Matrix<T> aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(j, i);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv.back() >= n) return std::nullopt;
    std::vector<T> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = aug(i, n);
    return c;
}

}  // namespace linalg
}  // namespace diffirr
