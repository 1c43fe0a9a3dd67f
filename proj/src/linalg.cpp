#include "plin/linalg.hpp"

#include <stdexcept>

namespace plin {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const
{
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_) {
        if (sgn(x) != 0) return false;
    }
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (sgn(b(k, j)) != 0) p(i, j) += aik * b(k, j);
            }
        }
    }
    return p;
}

Vector operator*(const Matrix& a, const Vector& v)
{
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(a(i, k)) != 0 && sgn(v[k]) != 0) out[i] += a(i, k) * v[k];
        }
    }
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix d(a);
    for (std::size_t i = 0; i < d.data_.size(); ++i) d.data_[i] -= b.data_[i];
    return d;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix s(a);
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
}

RowEchelon row_reduce(Matrix a)
{
    RowEchelon out;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t pivot_row = 0;
    std::vector<std::size_t> support;
    Scalar factor;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t r = pivot_row;
        while (r < rows && sgn(a(r, c)) == 0) ++r;
        if (r == rows) continue;
        if (r != pivot_row) {
            for (std::size_t k = c; k < cols; ++k) a(r, k).swap(a(pivot_row, k));
        }
        const Scalar inv = 1 / a(pivot_row, c);
        support.clear();
        for (std::size_t k = c; k < cols; ++k) {
            if (sgn(a(pivot_row, k)) != 0) {
                a(pivot_row, k) *= inv;
                support.push_back(k);
            }
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || sgn(a(i, c)) == 0) continue;
            factor = a(i, c);
            for (std::size_t k : support) a(i, k) -= factor * a(pivot_row, k);
        }
        out.pivot_cols.push_back(c);
        ++pivot_row;
    }
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const Matrix& a) { return row_reduce(a).pivot_cols.size(); }

std::vector<Vector> kernel(const Matrix& a)
{
    const RowEchelon e = row_reduce(a);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vector v(cols);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
            v[e.pivot_cols[r]] = -e.reduced(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b)
{
    if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
    Vector x(a.cols());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = e.reduced(r, a.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    }
    return inv;
}

Scalar determinant(const Matrix& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m(a);
    const std::size_t n = m.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && sgn(m(r, c)) == 0) ++r;
        if (r == n) return 0;
        if (r != c) {
            for (std::size_t k = 0; k < n; ++k) m(r, k).swap(m(c, k));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            const Scalar f = m(i, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(i, k) -= f * m(c, k);
        }
    }
    return det;
}

Scalar dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    }
    return s;
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v) {
        if (sgn(x) != 0) return false;
    }
    return true;
}

bool in_span(const std::vector<Vector>& basis, const Vector& v)
{
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    Matrix a(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < v.size(); ++i) a(i, j) = basis[j][i];
    }
    return solve(a, v).has_value();
}

std::optional<Vector> coordinates_in(const std::vector<Vector>& basis, const Vector& v)
{
    if (basis.empty()) {
        if (is_zero(v)) return Vector{};
        return std::nullopt;
    }
    Matrix a(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < v.size(); ++i) a(i, j) = basis[j][i];
    }
    return solve(a, v);
}

}  // namespace plin
