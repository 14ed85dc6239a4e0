#include "rht/graded_algebra.hpp"

#include "rht/errors.hpp"

namespace rht {

std::size_t GradedBasis::total_dimension() const {
  std::size_t n = 0;
  for (const auto& l : labels) n += l.size();
  return n;
}

std::string GradedAlgebra::format(int n, const Vector& v) const {
  std::string s;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Rational a = abs(v[i]);
    bool negative = sgn(v[i]) < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    std::string label = basis_label(n, i);
    if (label == "1") {
      s += to_string(a);
    } else {
      if (a != 1) s += to_string(a) + "*";
      s += label;
    }
  }
  return first ? "0" : s;
}

namespace {

std::vector<Vector> image_basis(const Matrix& d_prev) {
  // independent columns of d_prev, in echelon form
  EchelonBasis e(d_prev.rows());
  for (std::size_t c = 0; c < d_prev.cols(); ++c) e.insert(d_prev.column(c));
  return e.rows();
}

}  // namespace

CohomologyInDegree cohomology(const GradedAlgebra& a, int n) {
  CohomologyInDegree out;
  out.degree = n;
  const std::size_t dim = a.dimension(n);
  if (dim == 0) return out;
  Matrix d = a.differential_matrix(n);
  std::vector<Vector> kernel = kernel_basis(d);
  EchelonBasis span(dim);
  if (n > 0) {
    for (const auto& v : image_basis(a.differential_matrix(n - 1))) span.insert(v);
  }
  for (const auto& k : kernel) {
    Vector r = span.reduce(k);
    if (is_zero(r)) continue;
    span.insert(r);
    out.representatives.push_back(std::move(r));
  }
  out.dimension = out.representatives.size();
  return out;
}

CohomologyTable::CohomologyTable(AlgebraPtr algebra, int max_degree)
    : algebra_(std::move(algebra)), max_degree_(max_degree) {
  degrees_.reserve(static_cast<std::size_t>(max_degree + 1));
  for (int n = 0; n <= max_degree; ++n) {
    Degree deg;
    deg.h = cohomology(*algebra_, n);
    const std::size_t dim = algebra_->dimension(n);
    Matrix d_prev = n > 0 ? algebra_->differential_matrix(n - 1) : Matrix(dim, 0);
    std::vector<Vector> cols = deg.h.representatives;
    std::vector<Vector> image = image_basis(d_prev);
    deg.image_rank = image.size();
    cols.insert(cols.end(), image.begin(), image.end());
    deg.coordinates = LinearSolver(Matrix::from_columns(cols, dim));
    deg.boundary = LinearSolver(d_prev);
    degrees_.push_back(std::move(deg));
  }
}

std::size_t CohomologyTable::dimension(int n) const {
  if (n < 0 || n > max_degree_) throw Error("cohomology degree out of computed range");
  return degrees_[static_cast<std::size_t>(n)].h.dimension;
}

const std::vector<Vector>& CohomologyTable::representatives(int n) const {
  if (n < 0 || n > max_degree_) throw Error("cohomology degree out of computed range");
  return degrees_[static_cast<std::size_t>(n)].h.representatives;
}

Vector CohomologyTable::class_of(int n, const Vector& z) const {
  const auto& deg = degrees_.at(static_cast<std::size_t>(n));
  auto x = deg.coordinates.solve(z);
  if (!x) throw InvariantViolation("class_of: vector in degree " + std::to_string(n) +
                                   " is not a cocycle");
  return Vector(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(deg.h.dimension));
}

bool CohomologyTable::is_exact(int n, const Vector& z) const {
  return primitive(n, z).has_value();
}

std::optional<Vector> CohomologyTable::primitive(int n, const Vector& z) const {
  if (n == 0) {
    if (is_zero(z)) return Vector{};
    return std::nullopt;
  }
  return degrees_.at(static_cast<std::size_t>(n)).boundary.solve(z);
}

long long CohomologyTable::euler_characteristic() const {
  long long chi = 0;
  for (int n = 0; n <= max_degree_; ++n) {
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(dimension(n));
  }
  return chi;
}

}  // namespace rht
