#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rht/dgl.hpp"
#include "rht/free_dgl.hpp"
#include "rht/morphism.hpp"

namespace rht {

/// The chain Lie algebra A⊗L built from a finite-dimensional CDGA A and a
/// free DGL L:
///   |a⊗l| = -|a| + |l|
///   [a⊗l, a'⊗l'] = (-1)^{|a'||l|} aa' ⊗ [l,l']
///   D(a⊗l) = d_A a ⊗ l + (-1)^{|a|} a ⊗ d_L l
/// The basis of degree n lists a_i⊗b_j for A-degree p ascending, then the
/// basis of A^p, then the basis of L_{n+p}.
class TensorLieModel : public DglView {
 public:
  /// Throws ConnectivityViolation when some a⊗l would have degree <= 0.
  TensorLieModel(AlgebraPtr a, FreeDglPtr l);

  const AlgebraPtr& cdga() const { return a_; }
  const FreeDglPtr& lie() const { return l_; }
  int top_degree() const { return top_; }

  struct BasisElement {
    int a_degree;
    std::size_t a_index;
    std::size_t l_index;
  };
  const std::vector<BasisElement>& basis(int n) const;
  /// Position of a_i⊗b_j in basis(n).
  std::size_t index_of(int n, int a_degree, std::size_t a_index, std::size_t l_index) const;

  /// Blocks (A-degree, A-basis index) -> Lie element of degree n + A-degree.
  using Blocks = std::map<std::pair<int, std::size_t>, LieElement>;
  Blocks decode(int n, const Vector& v) const;
  Vector encode(int n, const Blocks& blocks) const;

  std::size_t dimension(int n) const override;
  Matrix boundary_matrix(int n) const override;
  Vector bracket(int p, const Vector& x, int q, const Vector& y) const override;
  std::string basis_label(int n, std::size_t i) const override;

 private:
  struct Degree {
    std::vector<BasisElement> basis;
    std::map<std::pair<int, std::size_t>, std::size_t> block_start;
    std::optional<Matrix> boundary;
  };
  Degree& degree_data(int n) const;  // caller holds the mutex

  AlgebraPtr a_;
  FreeDglPtr l_;
  int top_ = 0;
  struct Cache {
    std::mutex mutex;
    std::map<int, Degree> degrees;
  };
  std::shared_ptr<Cache> cache_;
};

using TensorLieModelPtr = std::shared_ptr<const TensorLieModel>;

/// Builds A⊗L and checks the DGL axioms on basis elements up to
/// `validation_bound`; a failure is an InvariantViolation.
TensorLieModelPtr mapping_space_lie_model(AlgebraPtr a, FreeDglPtr l, int validation_bound,
                                          StructureReport* report = nullptr);

/// A⊗L -> L induced by the augmentation A -> A^0 = Q, and L -> A⊗L, l -> 1⊗l.
struct EvaluationMaps {
  DglMorphism projection;
  DglMorphism section;
};

EvaluationMaps evaluation_maps(const TensorLieModelPtr& m, int bound);

/// I = i⊗id and Q = q⊗id between (∧t)⊗L and A⊗L.
struct TensorRetract {
  TensorLieModelPtr small;
  DglMorphism inclusion;
  DglMorphism projection;
};

/// i: E -> A and q: A -> E with q∘i = id (NotARetract otherwise), E the
/// source of i. Q∘I = id is checked up to `bound`.
TensorRetract tensor_retract(const TensorLieModelPtr& m, const CdgaMorphism& i,
                             const CdgaMorphism& q, int bound);

}  // namespace rht
