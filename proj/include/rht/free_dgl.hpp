#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rht/dgl.hpp"
#include "rht/element.hpp"
#include "rht/lie.hpp"

namespace rht {

/// Free graded Lie algebra L(V) inside the tensor algebra T(V), with a
/// boundary of degree -1 given on generators and extended as a derivation.
///
/// The basis of L_n is built recursively: generators of degree n, then the
/// brackets [g, b] for g a generator and b a basis element of L_{n-|g|},
/// kept when independent of the earlier ones (generator order, then basis
/// order of the shorter degree).
class FreeDgl : public DglView {
 public:
  FreeDgl();
  /// Empty `boundary` means zero. Each boundary must be a Lie element of
  /// degree |g| - 1; d^2 = 0 is checked on every generator.
  FreeDgl(GeneratorSet gens, std::vector<LieElement> boundary);

  const GeneratorSet& generators() const { return *gens_; }
  std::size_t num_generators() const { return gens_->size(); }
  LieElement generator(std::size_t i) const { return LieElement::generator(*gens_, i); }
  LieElement generator(const std::string& name) const { return generator(gens_->index(name)); }
  const LieElement& boundary_of(std::size_t i) const { return boundary_[i]; }
  LieElement boundary(const LieElement& x) const;
  /// d(V) lies in [L,L].
  bool is_minimal() const;
  bool has_zero_boundary() const;

  const std::vector<LieElement>& basis(int n) const;
  const std::vector<Word>& words(int n) const;
  /// Coordinates of x in basis(n); throws Error when x is not in L_n.
  Vector coordinates(int n, const LieElement& x) const;
  std::optional<Vector> try_coordinates(int n, const LieElement& x) const;
  LieElement from_coordinates(int n, const Vector& v) const;
  /// Coordinates of x in the tensor words of degree n.
  Vector word_vector(int n, const LieElement& x) const;
  std::string format(const LieElement& x) const;

  std::size_t dimension(int n) const override;
  Matrix boundary_matrix(int n) const override;
  Vector bracket(int p, const Vector& x, int q, const Vector& y) const override;
  std::string basis_label(int n, std::size_t i) const override;

 private:
  struct Degree {
    std::vector<Word> words;
    std::map<Word, std::size_t> word_index;
    std::vector<LieElement> basis;
    std::vector<std::string> labels;
    std::optional<LinearSolver> solver;
    std::optional<Matrix> boundary;
  };
  struct Cache {
    std::recursive_mutex mutex;
    std::map<int, Degree> degrees;
  };
  Degree& degree_data(int n) const;  // caller holds the cache mutex

  std::shared_ptr<const GeneratorSet> gens_;
  std::vector<LieElement> boundary_;
  std::shared_ptr<Cache> cache_;
};

using FreeDglPtr = std::shared_ptr<const FreeDgl>;

/// The abelian DGL V with the linear part of the boundary.
AbelianDgl abelianization(const FreeDgl& l, int max_degree);

}  // namespace rht
