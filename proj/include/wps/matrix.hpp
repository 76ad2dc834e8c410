#ifndef WPS_MATRIX_HPP
#define WPS_MATRIX_HPP

#include <vector>
#include <cstddef>
#include <optional>
#include "wps/rational.hpp"

namespace wps {

// Dense matrix of exact rationals, row-major.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& other) const;
    bool operator==(const Matrix& other) const;

    // Rows/columns restricted to the given index sets (in the given order).
    Matrix submatrix(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const;

    std::size_t rank() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    Matrix echelon;                       // reduced row echelon form
    std::vector<std::vector<Rational>> kernel_basis; // null-space vectors, length = cols
};

// Reduced row echelon form with exact arithmetic; deterministic pivoting
// (first nonzero entry top-down per column, left to right).
RrefResult rref(const Matrix& m);

// Kernel basis only (columns of m as the map's matrix).
std::vector<std::vector<Rational>> kernel(const Matrix& m);

// Express `target` in the span of `basis` vectors; nullopt if not in the span.
std::optional<std::vector<Rational>> solve_in_span(
    const std::vector<std::vector<Rational>>& basis,
    const std::vector<Rational>& target);

// Incremental span for rank bookkeeping and membership tests.
class Span {
  public:
    explicit Span(std::size_t dim) : dim_(dim) {}
    // Returns true if v was independent (and got added).
    bool add(std::vector<Rational> v);
    bool contains(std::vector<Rational> v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

  private:
    void reduce(std::vector<Rational>& v) const;
    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_; // echelonized
    std::vector<std::size_t> pivots_;
};

} // namespace wps

#endif
