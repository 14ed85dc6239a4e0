#pragma once

#include <functional>
#include <vector>

#include "rht/graded_algebra.hpp"
#include "rht/sullivan.hpp"

namespace rht {

/// Finite-dimensional commutative cochain algebra given by a basis, a
/// multiplication table on basis elements and one differential matrix per
/// degree. Products landing above the top degree are zero.
class FiniteCdga : public GradedAlgebra {
 public:
  /// product(p, i, q, j) is the product of basis element i of degree p with
  /// basis element j of degree q, in coordinates of degree p + q.
  using ProductFn = std::function<Vector(int p, std::size_t i, int q, std::size_t j)>;

  struct Options {
    /// Check unit, graded commutativity, associativity, d^2 = 0 and Leibniz
    /// on basis elements.
    bool validate = true;
    /// False when the algebra is a degree truncation of an infinite one.
    bool complete = true;
  };

  FiniteCdga(GradedBasis basis, std::vector<Matrix> differential, const ProductFn& product,
             Options options);
  FiniteCdga(GradedBasis basis, std::vector<Matrix> differential, const ProductFn& product)
      : FiniteCdga(std::move(basis), std::move(differential), product, Options{}) {}

  /// (H, 0) style algebra: zero differential.
  static FiniteCdga with_zero_differential(GradedBasis basis, const ProductFn& product,
                                           Options options);

  const GradedBasis& basis() const { return basis_; }
  bool complete() const { return complete_; }
  bool has_zero_differential() const;
  std::size_t total_dimension() const { return basis_.total_dimension(); }
  Vector basis_product(int p, std::size_t i, int q, std::size_t j) const;

  std::size_t dimension(int n) const override { return basis_.dimension(n); }
  Matrix differential_matrix(int n) const override;
  Vector multiply(int p, const Vector& a, int q, const Vector& b) const override;
  std::string basis_label(int n, std::size_t i) const override;
  std::optional<int> top_degree() const override;

 private:
  void validate() const;

  GradedBasis basis_;
  std::vector<Matrix> d_;
  // table_[p][q][i * dim(q) + j], only for p + q <= top
  std::vector<std::vector<std::vector<Vector>>> table_;
  bool complete_ = true;
};

using FinitePtr = std::shared_ptr<const FiniteCdga>;

/// Quotient of a free graded-commutative algebra by the ideal generated by
/// homogeneous `relations` together with everything above `truncate`. The
/// relations must span a differential ideal (checked up to `truncate`).
/// Basis labels are the surviving monomials.
FiniteCdga quotient_algebra(const SullivanAlgebra& free, const std::vector<Element>& relations,
                            int truncate, bool validate = true);

/// Coordinates in quotient_algebra(free, relations, ...) of the image of a
/// degree-n element, for n at most the truncation degree.
Vector quotient_coordinates(const SullivanAlgebra& free, const std::vector<Element>& relations,
                            int n, const Element& e);

/// (∧t, 0) on one odd generator as a two-dimensional algebra {1, t}.
FiniteCdga exterior_on_odd_generator(const std::string& name, int degree);

}  // namespace rht
