#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rht/dgl.hpp"
#include "rht/morphism.hpp"
#include "rht/sullivan.hpp"

namespace rht {

/// C*(L) truncated at max_degree: one generator of degree n + 1 dual to each
/// basis element of L_n (n + 1 <= max_degree), with d = d0 + d1,
///   d v_k = -sum_j (-1)^{|v_j|} <e_k, d e_j> v_j
///           + 1/2 sum_{i,j} (-1)^{|v_j||e_i|} <e_k, [e_i,e_j]> v_i v_j.
/// With L free on one odd generator a this gives dw = 1/2 x^2 for x, w dual
/// to a, [a,a]. Generators of degree max_degree are partial whenever L has
/// elements of that degree.
struct CstarModel {
  SullivanPtr algebra;
  int max_degree = 0;
  /// (L-degree, basis index) each generator is dual to, by generator index.
  std::vector<std::pair<int, std::size_t>> dual_of;

  /// Linear and quadratic parts of d on generator i.
  Element linear_part(std::size_t i) const;
  Element quadratic_part(std::size_t i) const;
};

CstarModel cstar(const DglView& l, int max_degree);

/// Degree -p derivation on ∧(Z ⊕ Z̄) with S(z) = z̄ and S(z̄) = 0.
/// Odd p: S(ab) = S(a)b + (-1)^{|a|} a S(b); even p: no sign.
class SuspensionDerivation {
 public:
  SuspensionDerivation(SullivanPtr algebra, int p, std::vector<Element> images);

  int p() const { return p_; }
  Element operator()(const Element& e) const;
  const SullivanPtr& algebra() const { return algebra_; }

 private:
  SullivanPtr algebra_;
  int p_;
  std::vector<Element> images_;
};

/// Sullivan model ∧(Z ⊕ Z̄) of F(S^p, Y) built from a minimal model ∧Z of Y.
/// Each z gets a partner z̄ = "z_bar" of degree |z| - p, and
///   d(z̄) = (-1)^p S(dz),
/// i.e. d and S commute in the graded sense. For odd p this is the
/// d(Sv) = -S(dv) of the construction; for even p the same formula with the
/// minus sign would break d^2 = 0.
struct SphereMappingModel {
  SullivanPtr algebra;
  SullivanPtr source;
  int p = 0;
  std::vector<std::size_t> base_index;  // z -> its index in `algebra`
  std::vector<std::size_t> bar_index;   // z -> index of z̄
  SuspensionDerivation suspension;
  /// ∧Z -> ∧(Z ⊕ Z̄), the inclusion of the base.
  CdgaMorphism inclusion;
  /// ∧(Z ⊕ Z̄) -> ∧Z killing every z̄ (constant maps).
  CdgaMorphism projection;
  /// Lower grading per generator of `algebra` when the source carried one;
  /// z̄ inherits the grading of z. Not verified as a bigraded model.
  std::optional<std::vector<int>> lower_grading;
};

SphereMappingModel sphere_mapping_space_model(SullivanPtr y, int p,
                                              std::optional<std::vector<int>> source_lower = {});

Element apply_suspension(const SuspensionDerivation& s, const Element& e);

}  // namespace rht
