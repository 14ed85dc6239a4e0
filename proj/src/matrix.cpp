#include "rht/matrix.hpp"

#include <cassert>
#include <utility>

namespace rht {

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Rational(0));
  v[i] = 1;
  return v;
}

Vector add(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector scaled(const Vector& a, const Rational& s) {
  Vector r(a);
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vector& a, const Rational& s, const Vector& b) {
  assert(a.size() == b.size());
  if (sgn(s) == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) != 0) a[i] += s * b[i];
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    assert(rows[r].size() == cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    assert(cols[c].size() == rows);
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Vector Matrix::apply(const Vector& x) const {
  assert(x.size() == cols_);
  Vector y(rows_, Rational(0));
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(x[c]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) != 0) y[r] += a * x[c];
    }
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  assert(cols_ == other.rows_);
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Rational& b = other(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

namespace {

// Gauss-Jordan on m, mirroring every row operation onto `shadow` (which may
// have zero columns when not needed).
std::vector<std::size_t> eliminate(Matrix& m, Matrix& shadow) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto swap_rows = [](Matrix& a, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
  };
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot_row = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (sgn(m(r, col)) != 0) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == rows) continue;
    if (pivot_row != row) {
      swap_rows(m, row, pivot_row);
      swap_rows(shadow, row, pivot_row);
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t c = 0; c < cols; ++c) m(row, c) *= inv;
    for (std::size_t c = 0; c < shadow.cols(); ++c) shadow(row, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      Rational factor = m(r, col);
      for (std::size_t c = col; c < cols; ++c) {
        if (sgn(m(row, c)) != 0) m(r, c) -= factor * m(row, c);
      }
      for (std::size_t c = 0; c < shadow.cols(); ++c) {
        if (sgn(shadow(row, c)) != 0) shadow(r, c) -= factor * shadow(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RowEchelon rref(Matrix m) {
  Matrix none(m.rows(), 0);
  auto pivots = eliminate(m, none);
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      v[e.pivots[i]] = -e.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  return LinearSolver(m).solve(b);
}

LinearSolver::LinearSolver(const Matrix& m)
    : rows_(m.rows()), cols_(m.cols()), transform_(Matrix::identity(m.rows())) {
  Matrix work(m);
  pivots_ = eliminate(work, transform_);
}

std::optional<Vector> LinearSolver::solve(const Vector& b) const {
  assert(b.size() == rows_);
  Vector y = transform_.apply(b);
  for (std::size_t r = pivots_.size(); r < rows_; ++r) {
    if (sgn(y[r]) != 0) return std::nullopt;
  }
  Vector x(cols_, Rational(0));
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = y[i];
  return x;
}

bool LinearSolver::in_column_space(const Vector& b) const {
  return solve(b).has_value();
}

Vector EchelonBasis::reduce(Vector v) const {
  assert(v.size() == ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational c = v[pivots_[i]];
    if (sgn(c) != 0) axpy(v, -c, rows_[i]);
  }
  return v;
}

bool EchelonBasis::contains(const Vector& v) const { return rht::is_zero(reduce(v)); }

bool EchelonBasis::insert(const Vector& v) {
  Vector r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < r.size() && sgn(r[pivot]) == 0) ++pivot;
  if (pivot == r.size()) return false;
  r = scaled(r, 1 / r[pivot]);
  for (auto& row : rows_) {
    const Rational c = row[pivot];
    if (sgn(c) != 0) axpy(row, -c, r);
  }
  // keep rows ordered by pivot column
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
  return true;
}

}  // namespace rht
