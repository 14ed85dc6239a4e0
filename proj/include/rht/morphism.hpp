#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rht/graded_algebra.hpp"
#include "rht/sullivan.hpp"

namespace rht {

/// Degree-0 map of commutative cochain algebras. A map out of a Sullivan
/// algebra is determined by the images of the generators; a map out of any
/// other algebra is given by one matrix per degree.
class CdgaMorphism {
 public:
  static CdgaMorphism from_generator_images(SullivanPtr source, AlgebraPtr target,
                                            std::vector<Vector> images);
  static CdgaMorphism from_matrices(AlgebraPtr source, AlgebraPtr target,
                                    std::vector<Matrix> per_degree);
  static CdgaMorphism identity(SullivanPtr algebra);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  /// Non-null when the source is a Sullivan algebra.
  const SullivanPtr& sullivan_source() const { return sullivan_; }
  const std::vector<Vector>& generator_images() const { return images_; }

  Matrix matrix(int n) const;
  Vector apply(int n, const Vector& x) const { return matrix(n).apply(x); }
  /// Image of a homogeneous element of a Sullivan source.
  Vector apply(const Element& e) const;

 private:
  CdgaMorphism() = default;
  Vector evaluate_monomial(const Monomial& m) const;

  AlgebraPtr source_;
  AlgebraPtr target_;
  SullivanPtr sullivan_;
  std::vector<Vector> images_;
  std::vector<Matrix> fixed_;
  struct Cache {
    std::mutex mutex;
    std::map<int, Matrix> matrices;
  };
  std::shared_ptr<Cache> cache_;
};

/// g after f, materialized degreewise for degrees 0..max_degree.
CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f, int max_degree);

struct InducedMapDegree {
  int degree = 0;
  std::size_t source_dimension = 0;
  std::size_t target_dimension = 0;
  std::size_t rank = 0;
  Matrix matrix;  // in the representative bases
  bool is_isomorphism() const {
    return rank == source_dimension && rank == target_dimension;
  }
};

struct MorphismReport {
  std::vector<InducedMapDegree> cohomology;
  bool quasi_isomorphism_up_to_bound() const;
};

/// Verifies unit, multiplicativity (on basis pairs for non-free sources) and
/// f∘d = d∘f in degrees <= max_degree; throws NotAMorphism.
void verify_morphism(const CdgaMorphism& f, int max_degree);

/// Verifies unit, multiplicativity (on basis pairs for non-free sources) and
/// f∘d = d∘f, then computes H(f) in degrees 0..max_degree. Throws
/// NotAMorphism naming the first violated relation.
MorphismReport check_morphism(const CdgaMorphism& f, int max_degree);

/// H(f) in degree n from precomputed cohomology tables of source and target.
InducedMapDegree induced_map(const CdgaMorphism& f, const CohomologyTable& source,
                             const CohomologyTable& target, int n);

}  // namespace rht
