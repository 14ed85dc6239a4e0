#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rht/finite_cdga.hpp"
#include "rht/graded_algebra.hpp"
#include "rht/morphism.hpp"
#include "rht/sullivan.hpp"

namespace rht {

// ---------------------------------------------------------------- models

struct MinimalModel {
  SullivanPtr algebra;
  CdgaMorphism map;  // model -> input, a quasi-isomorphism up to max_degree
  int max_degree = 0;
};

/// Degree-by-degree minimal model of a simply connected algebra. In degree n
/// closed generators are added for the cokernel of H^n, then generators of
/// degree n kill the kernel of H^{n+1}. Throws NotSimplyConnected when
/// H^0 != Q or H^1 != 0.
MinimalModel minimal_model(AlgebraPtr a, int max_degree);

/// Halperin–Stasheff bigraded model of (H, 0): generators carry a lower
/// grading k with d(Z_k) ⊂ (∧Z)_{k-1}.
struct BigradedModel {
  SullivanPtr algebra;
  std::vector<int> lower;            // per generator of `algebra`
  std::optional<CdgaMorphism> rho;   // ∧Z -> (H, 0)
  int max_degree = 0;

  int lower_of(const Monomial& m) const;
  /// First generator whose differential breaks the grading law.
  std::optional<std::string> grading_violation() const;
};

/// Z_0 = indecomposables of H; then, degree by degree and lowest lower
/// grading first, generators killing the classes that are not in lower
/// grading 0 or lie in the kernel of rho. Throws NotSimplyConnected.
BigradedModel bigraded_model(std::shared_ptr<const FiniteCdga> h, int max_degree);

// ------------------------------------------------------- regular sequences

enum class RegularityStatus { RegularUpToBound, NotRegular };

struct RegularSequenceVerdict {
  RegularityStatus status = RegularityStatus::RegularUpToBound;
  int bound = 0;
  GeneratorSet ring;             // even generators, the polynomial ring
  std::vector<Element> sequence; // in `ring`
  // NotRegular witness: multiplier * f_index = sum_j coefficients[j] * f_j
  // over j < index, with multiplier not in (f_0 .. f_{index-1}).
  std::size_t index = 0;
  int degree = 0;
  Element multiplier;
  std::vector<Element> coefficients;

  std::string witness() const;
};

/// Checks degreewise up to max_degree that each f_i is a non-zerodivisor
/// modulo f_0..f_{i-1} in Q[E], E the even generators of `gens`.
/// NonHomogeneousInput for inhomogeneous input; Error when an odd generator
/// occurs.
RegularSequenceVerdict regular_sequence_check(const GeneratorSet& gens,
                                              const std::vector<Element>& polys, int max_degree);

// ------------------------------------------------------------------ Massey

/// <a, b, c> with du = ab, dv = bc and value u c - (-1)^{|a|} a v.
struct MasseySystem {
  AlgebraPtr algebra;
  int degree_a = 0, degree_b = 0, degree_c = 0;
  Vector a, b, c, u, v;
  int degree = 0;                      // |a| + |b| + |c| - 1
  Vector value;                        // cocycle
  Vector value_class;                  // in the cohomology representative basis
  std::vector<Vector> indeterminacy;   // basis of [a] H + H [c], class coordinates
  bool contains_zero = false;
};

/// nullopt when [a][b] or [b][c] is nonzero. Throws Error when an input is
/// not a cocycle.
std::optional<MasseySystem> massey_triple(AlgebraPtr algebra, int p, const Vector& a, int q,
                                          const Vector& b, int r, const Vector& c);
/// Same, against a precomputed table reaching |a|+|b|+|c|-1.
std::optional<MasseySystem> massey_with_table(const CohomologyTable& table, int p, const Vector& a,
                                              int q, const Vector& b, int r, const Vector& c);
/// Recomputes every relation of the system; false when one fails.
bool verify_massey(const MasseySystem& m);

// --------------------------------------------------------------- formality

enum class FormalityStatus { CertifiedFormal, CertifiedNonformal, Inconclusive };
std::string to_string(FormalityStatus s);

struct FormalityWitness {
  std::string route;                  // "koszul" or "psi"
  std::optional<CdgaMorphism> psi;    // model -> algebra with zero differential
  std::optional<CdgaMorphism> model;  // psi route: minimal model -> input
  std::optional<RegularSequenceVerdict> regularity;
};

struct FormalityVerdict {
  FormalityStatus status = FormalityStatus::Inconclusive;
  int bound = 0;
  std::optional<FormalityWitness> formal;
  std::optional<MasseySystem> massey;
  std::size_t branches = 0;  // psi candidates tried
  std::string detail;
};

struct FormalityOptions {
  std::size_t backtrack_cap = 64;
  bool try_koszul = true;
  bool search_massey = true;
};

struct KoszulResult {
  bool applicable = false;
  std::string reason;
  std::optional<RegularSequenceVerdict> regularity;
  std::optional<FormalityVerdict> verdict;  // set when certified
};

/// Even generators closed, odd generators with d(o) in Q[E]. Closed odd
/// generators are split off as an exterior factor.
KoszulResult koszul_formality(SullivanPtr algebra, int max_degree);

FormalityVerdict formality_check(AlgebraPtr a, int max_degree, const FormalityOptions& options = {});

/// Re-checks a certificate; throws InvariantViolation if it does not hold.
void verify_certificate(const FormalityVerdict& v);

// ------------------------------------------------------------- Lemma 3.7

struct Lemma37Witness {
  std::size_t w = 0;
  std::size_t w_prime = 0;  // generator index
  Rational scale;           // the witness element is scale * generator
  int n = 0;
  Element omega;
};

/// Searches n = 2, 3, ... with n|w| <= search_degree + 1 for an odd
/// generator w' of positive lower grading whose differential has a nonzero
/// w^n coefficient. Throws Error when w is odd or has lower grading 0.
/// nullopt only means nothing was found below the bound; a witness is
/// guaranteed in the untruncated model.
std::optional<Lemma37Witness> lemma37_witness(const BigradedModel& b, std::size_t w,
                                              int search_degree);

// ------------------------------------------------------- retract transfer

struct RetractTransferReport {
  FormalityVerdict target_verdict;
  std::optional<FormalityVerdict> source_verdict;
  bool confirmed = false;
  std::string summary;
};

/// f: A -> B, g: B -> A with g∘f = id (NotARetract otherwise).
RetractTransferReport retract_transfer_check(const CdgaMorphism& f, const CdgaMorphism& g,
                                             int max_degree, const FormalityOptions& options = {});

}  // namespace rht
