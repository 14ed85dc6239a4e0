#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rht/rational.hpp"

namespace rht {

using Vector = std::vector<Rational>;

bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Vector add(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, const Rational& s);
/// a += s * b
void axpy(Vector& a, const Rational& s, const Vector& b);

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  /// All rows must have `cols` entries.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  std::vector<Vector> columns() const;

  Vector apply(const Vector& x) const;
  Matrix operator*(const Matrix& other) const;
  Matrix transposed() const;
  bool is_zero() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form. Pivot search runs over columns left to right and
/// takes the lowest row index with a nonzero entry.
RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Null-space basis, one vector per free column (free variable set to 1,
/// the other free variables to 0).
std::vector<Vector> kernel_basis(const Matrix& m);

/// One solution of m*x = b with every free variable set to zero, or nullopt
/// when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Repeated solves against a fixed coefficient matrix. The row operations
/// bringing the matrix to reduced echelon form are recorded once.
class LinearSolver {
 public:
  LinearSolver() = default;
  explicit LinearSolver(const Matrix& m);

  std::size_t rank() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::optional<Vector> solve(const Vector& b) const;
  bool in_column_space(const Vector& b) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Matrix transform_;  // rows x rows, transform_ * m = rref(m)
  std::vector<std::size_t> pivots_;
};

/// Incrementally grown subspace kept in reduced echelon form.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return rows_.size(); }

  /// Remainder of v after eliminating every pivot coordinate.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Adds v if independent; returns true when the dimension grew.
  bool insert(const Vector& v);
  const std::vector<Vector>& rows() const { return rows_; }

 private:
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace rht
