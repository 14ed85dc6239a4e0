#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rht/element.hpp"
#include "rht/graded_algebra.hpp"

namespace rht {

/// Free graded-commutative algebra on finitely many generators with a degree +1
/// differential given on generators and extended by the Leibniz rule.
///
/// The constructor checks that each d(generator) is homogeneous of degree
/// |generator| + 1 and that d(d(generator)) = 0. Generators flagged `partial`
/// (differential known only up to a truncation) are exempt from the d^2 check.
class SullivanAlgebra : public GradedAlgebra {
 public:
  SullivanAlgebra();
  SullivanAlgebra(GeneratorSet gens, std::vector<Element> differential,
                  std::vector<bool> partial = {});
  static SullivanAlgebra free(GeneratorSet gens);

  const GeneratorSet& generators() const { return *gens_; }
  std::size_t num_generators() const { return gens_->size(); }
  const Element& differential_of(std::size_t i) const { return d_[i]; }
  const std::vector<Element>& differentials() const { return d_; }
  bool is_partial(std::size_t i) const { return !partial_.empty() && partial_[i]; }
  bool has_partial_generators() const;

  Element generator(std::size_t i) const { return generator_element(*gens_, i); }
  Element generator(const std::string& name) const { return generator(gens_->index(name)); }
  Element multiply(const Element& a, const Element& b) const {
    return rht::multiply(*gens_, a, b);
  }
  /// Leibniz extension of d.
  Element d(const Element& e) const;
  std::string format(const Element& e) const { return to_string(*gens_, e); }
  using GradedAlgebra::format;

  /// dV in the decomposables for every generator.
  bool is_minimal() const;
  /// Generator indices whose differential vanishes.
  bool is_closed(std::size_t i) const { return d_[i].is_zero(); }

  /// All monomials of degree n in canonical order.
  const std::vector<Monomial>& basis(int n) const;
  std::optional<std::size_t> index_of(const Monomial& m) const;
  Vector to_vector(int n, const Element& e) const;
  Element from_vector(int n, const Vector& v) const;

  std::size_t dimension(int n) const override;
  Matrix differential_matrix(int n) const override;
  Vector multiply(int p, const Vector& a, int q, const Vector& b) const override;
  std::string basis_label(int n, std::size_t i) const override;
  std::optional<int> top_degree() const override;

 private:
  struct DegreeData {
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t, MonomialOrder> index;
    std::optional<Matrix> differential;
  };
  struct Cache {
    std::mutex mutex;
    std::map<int, DegreeData> degrees;
  };
  DegreeData& degree_data(int n) const;  // caller holds the cache mutex

  std::shared_ptr<const GeneratorSet> gens_;
  std::vector<Element> d_;
  std::vector<bool> partial_;
  std::shared_ptr<Cache> cache_;
};

using SullivanPtr = std::shared_ptr<const SullivanAlgebra>;

/// Monomials of degree n over `gens`, exponent vectors in descending
/// lexicographic order.
std::vector<Monomial> enumerate_monomials(const GeneratorSet& gens, int n);

}  // namespace rht
