#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rht/graded_algebra.hpp"
#include "rht/matrix.hpp"

namespace rht {

/// A chain Lie algebra concentrated in degrees >= 1, accessed degree by degree
/// in coordinates. The boundary has degree -1.
class DglView {
 public:
  virtual ~DglView() = default;

  virtual std::size_t dimension(int n) const = 0;
  /// d: L_n -> L_{n-1} as a dim(n-1) x dim(n) matrix.
  virtual Matrix boundary_matrix(int n) const = 0;
  virtual Vector bracket(int p, const Vector& x, int q, const Vector& y) const = 0;
  virtual std::string basis_label(int n, std::size_t i) const = 0;

  Vector boundary(int n, const Vector& x) const { return boundary_matrix(n).apply(x); }
  std::string format(int n, const Vector& v) const;
};

using DglPtr = std::shared_ptr<const DglView>;

/// Zero bracket, boundary given by matrices. labels[n] names the basis of L_n;
/// boundary[n] is the matrix of d on L_n (missing entries mean zero).
class AbelianDgl : public DglView {
 public:
  AbelianDgl(GradedBasis basis, std::vector<Matrix> boundary);

  std::size_t dimension(int n) const override { return basis_.dimension(n); }
  Matrix boundary_matrix(int n) const override;
  Vector bracket(int p, const Vector& x, int q, const Vector& y) const override;
  std::string basis_label(int n, std::size_t i) const override { return basis_.labels[n][i]; }

 private:
  GradedBasis basis_;
  std::vector<Matrix> boundary_;
};

struct HomologyInDegree {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<Vector> representatives;
};

/// ker(d_n) / im(d_{n+1}), representatives reduced against the image.
HomologyInDegree homology(const DglView& l, int n);

/// Outcome of checking the DGL axioms on basis elements up to a degree bound:
/// d^2 = 0 on every basis element of degree <= bound, antisymmetry and the
/// derivation law on pairs with |x|+|y| <= bound, Jacobi on triples with
/// |x|+|y|+|z| <= bound.
struct StructureReport {
  int bound = 0;
  std::size_t d_squared = 0;
  std::size_t antisymmetry = 0;
  std::size_t derivation = 0;
  std::size_t jacobi = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

StructureReport validate_dgl(const DglView& l, int bound);

/// Degree-0 linear map between chain Lie algebras, stored for degrees 1..bound.
class DglMorphism {
 public:
  DglMorphism(DglPtr source, DglPtr target, std::map<int, Matrix> per_degree);

  const DglPtr& source() const { return source_; }
  const DglPtr& target() const { return target_; }
  int bound() const { return per_degree_.empty() ? 0 : per_degree_.rbegin()->first; }
  const Matrix& matrix(int n) const;
  Vector apply(int n, const Vector& x) const { return matrix(n).apply(x); }

  /// Commutes with d and preserves brackets of basis pairs within the bound.
  /// Throws NotAMorphism naming the first failure.
  void verify() const;

 private:
  DglPtr source_;
  DglPtr target_;
  std::map<int, Matrix> per_degree_;
};

DglMorphism compose(const DglMorphism& g, const DglMorphism& f);
bool is_identity(const DglMorphism& f);

}  // namespace rht
