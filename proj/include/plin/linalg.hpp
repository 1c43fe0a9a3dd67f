#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "plin/scalar.hpp"

namespace plin {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    // Rows given as vectors of equal length.
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector col(std::size_t c) const;
    Matrix transposed() const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

// Reduced row-echelon form. Pivots are chosen as the leftmost nonzero column,
// taking the first available row, so the result is deterministic.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};

RowEchelon row_reduce(Matrix a);

std::size_t rank(const Matrix& a);

// Null-space basis: one vector per free column, with that free variable set to 1
// and the other free variables set to 0.
std::vector<Vector> kernel(const Matrix& a);

// Solution of a*x = b with all free variables zero, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

std::optional<Matrix> inverse(const Matrix& a);

Scalar determinant(const Matrix& a);

Scalar dot(const Vector& a, const Vector& b);

bool is_zero(const Vector& v);

// Whether v lies in the span of `basis` (vectors of the same length).
bool in_span(const std::vector<Vector>& basis, const Vector& v);

// Coordinates of v with respect to linearly independent `basis`, or nullopt.
std::optional<Vector> coordinates_in(const std::vector<Vector>& basis, const Vector& v);

}  // namespace plin
