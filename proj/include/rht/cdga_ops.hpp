#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/finite_cdga.hpp"
#include "rht/morphism.hpp"
#include "rht/sullivan.hpp"

namespace rht {

/// (H, 0) truncated at the table's degree bound: basis = cohomology
/// representatives, product = class of the product of representatives.
FiniteCdga cohomology_algebra(const CohomologyTable& table);

struct FiniteModel {
  std::shared_ptr<const FiniteCdga> quotient;
  CdgaMorphism projection;  // ∧V -> quotient
  int top_degree = 0;       // cohomology vanishes above this degree
  /// Degree-`top_degree` monomial indices kept by the quotient.
  std::vector<std::size_t> kept_in_top_degree;
};

/// Finite-dimensional model (∧V)/I where I^k = 0 below the top cohomological
/// degree p, I^p is spanned by the non-pivot monomials of the reduced echelon
/// form of ker d^p, and I^k = (∧V)^k above p. The projection is verified to
/// be a quasi-isomorphism in every degree <= check_bound.
///
/// When `top_degree` is not supplied it is detected as the largest degree
/// <= check_bound carrying cohomology; detection requires H^n = 0 for every
/// p < n <= check_bound with check_bound >= 2p. Throws TopDegreeNotFound
/// otherwise.
FiniteModel finite_dimensional_model(SullivanPtr algebra, int check_bound,
                                     std::optional<int> top_degree = std::nullopt);

struct SphericalRetract {
  Generator t;
  std::size_t generator_index = 0;
  std::shared_ptr<const SullivanAlgebra> exterior;  // (∧t, 0)
  CdgaMorphism inclusion;                          // i: (∧t,0) -> alg
  CdgaMorphism projection;                         // q: alg -> (∧t,0)
};

/// First odd closed generator t of a minimal algebra, with the inclusion of
/// (∧t,0) and the algebra map killing every other generator. q∘i = id is
/// verified. nullopt when Ker d ∩ V_odd = 0.
std::optional<SphericalRetract> odd_spherical_retract(SullivanPtr algebra);

/// Retract pushed through a finite model: i' = π∘i into the quotient and q'
/// with q'∘π = q, both as maps of finite algebras against (∧t,0) given as a
/// finite algebra {1, t}.
struct FiniteRetract {
  std::shared_ptr<const FiniteCdga> exterior;
  CdgaMorphism inclusion;   // (∧t,0) -> A
  CdgaMorphism projection;  // A -> (∧t,0)
};
FiniteRetract push_retract(const SphericalRetract& r, const FiniteModel& model);

enum class FreenessStatus { Free, NotFree, FreeUpToBound };

struct FreenessVerdict {
  FreenessStatus status = FreenessStatus::FreeUpToBound;
  int failing_degree = -1;  // first degree where dimensions disagree
  int bound = 0;
  /// indecomposable counts per degree (index = degree)
  std::vector<std::size_t> indecomposables;
  std::vector<std::size_t> algebra_dimensions;
  std::vector<std::size_t> free_dimensions;
};

/// Compares H with the free graded-commutative algebra on its indecomposables
/// degree by degree. H must have zero differential.
FreenessVerdict is_free_graded_commutative(const FiniteCdga& h, int max_degree);

/// Dimensions of the free graded-commutative algebra with `generators[n]`
/// generators in degree n, for degrees 0..max_degree.
std::vector<std::size_t> free_algebra_dimensions(const std::vector<std::size_t>& generators,
                                                 int max_degree);

std::string to_string(FreenessStatus s);

}  // namespace rht
