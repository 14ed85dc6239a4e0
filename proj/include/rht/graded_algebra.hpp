#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rht/matrix.hpp"

namespace rht {

/// Degree -> ordered list of basis labels, finite in every degree.
struct GradedBasis {
  std::vector<std::vector<std::string>> labels;  // labels[n] for n = 0..top

  std::size_t dimension(int n) const {
    return (n < 0 || n >= static_cast<int>(labels.size())) ? 0 : labels[n].size();
  }
  int top_degree() const { return static_cast<int>(labels.size()) - 1; }
  std::size_t total_dimension() const;
};

/// A connected commutative cochain algebra of finite type, accessed degree by
/// degree in coordinates. Degree-0 coordinate 0 is always the unit.
class GradedAlgebra {
 public:
  virtual ~GradedAlgebra() = default;

  virtual std::size_t dimension(int n) const = 0;
  /// d: A^n -> A^{n+1} as a dim(n+1) x dim(n) matrix.
  virtual Matrix differential_matrix(int n) const = 0;
  virtual Vector multiply(int p, const Vector& a, int q, const Vector& b) const = 0;
  virtual std::string basis_label(int n, std::size_t i) const = 0;
  /// Highest nonzero degree when the algebra is finite-dimensional.
  virtual std::optional<int> top_degree() const = 0;

  Vector differential(int n, const Vector& a) const { return differential_matrix(n).apply(a); }
  Vector unit() const { return unit_vector(1, 0); }
  std::string format(int n, const Vector& v) const;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

struct CohomologyInDegree {
  int degree = 0;
  std::size_t dimension = 0;
  /// Cocycles whose classes form a basis; each is a kernel basis vector
  /// reduced against the image of the previous differential.
  std::vector<Vector> representatives;
};

CohomologyInDegree cohomology(const GradedAlgebra& a, int n);

/// Cohomology in degrees 0..max_degree together with the data needed to read
/// off the class of any cocycle.
class CohomologyTable {
 public:
  CohomologyTable(AlgebraPtr algebra, int max_degree);

  const AlgebraPtr& algebra() const { return algebra_; }
  int max_degree() const { return max_degree_; }
  std::size_t dimension(int n) const;
  const std::vector<Vector>& representatives(int n) const;
  /// Coordinates of [z] in the representative basis. Throws InvariantViolation
  /// if z is not a cocycle.
  Vector class_of(int n, const Vector& z) const;
  bool is_exact(int n, const Vector& z) const;
  /// Some a with d(a) = z, free coordinates zero; nullopt when z is not exact.
  std::optional<Vector> primitive(int n, const Vector& z) const;
  /// Euler characteristic of H^0..H^max_degree.
  long long euler_characteristic() const;

 private:
  struct Degree {
    CohomologyInDegree h;
    LinearSolver coordinates;  // columns: representatives then image basis
    LinearSolver boundary;     // d_{n-1}
    std::size_t image_rank = 0;
  };
  AlgebraPtr algebra_;
  int max_degree_;
  std::vector<Degree> degrees_;
};

}  // namespace rht
