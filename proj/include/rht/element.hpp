#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rht/rational.hpp"

namespace rht {

/// A generator of a free graded(-commutative or Lie) algebra.
struct Generator {
  std::string name;
  int degree = 1;
  bool odd() const { return degree % 2 != 0; }
  bool operator==(const Generator&) const = default;
};

bool is_identifier(const std::string& s);

/// Generators sorted by (degree, name). Indices into this set are what
/// monomials and tensor words refer to.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  /// Throws rht::Error on duplicate names, bad identifiers or degree < 1.
  explicit GeneratorSet(std::vector<Generator> gens);

  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& all() const { return gens_; }
  int degree(std::size_t i) const { return gens_[i].degree; }
  bool odd(std::size_t i) const { return gens_[i].odd(); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // throws if absent
  int max_degree() const;

  bool operator==(const GeneratorSet& o) const { return gens_ == o.gens_; }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

struct Factor {
  std::size_t gen = 0;
  int exponent = 1;
  bool operator==(const Factor&) const = default;
};

/// Product of generator powers in canonical (generator index) order. Odd
/// generators never carry an exponent above 1. The empty product is the unit.
struct Monomial {
  std::vector<Factor> factors;
  int degree = 0;

  bool is_unit() const { return factors.empty(); }
  /// number of generator factors counted with multiplicity
  int length() const;
  int exponent_of(std::size_t gen) const;
  bool operator==(const Monomial& o) const { return factors == o.factors; }
};

/// Orders by degree, then by exponent vectors in descending lexicographic
/// order (x1^2 < x1*x2 < x2^2).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

Monomial make_monomial(const GeneratorSet& gens, std::vector<Factor> factors);
Monomial generator_monomial(const GeneratorSet& gens, std::size_t i, int exponent = 1);

/// Product of two monomials in the free graded-commutative algebra: the Koszul
/// sign and the canonical monomial, or nullopt when an odd generator repeats.
std::optional<std::pair<int, Monomial>> multiply(const GeneratorSet& gens,
                                                 const Monomial& a,
                                                 const Monomial& b);

/// Sparse rational combination of monomials; no zero coefficients stored.
class Element {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Element() = default;
  static Element unit();
  static Element scalar(const Rational& c);
  static Element monomial(const Monomial& m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Degree of the element when every term has the same degree.
  std::optional<int> homogeneous_degree() const;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);
  Element operator-() const;
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }

  bool operator==(const Element& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

Element multiply(const GeneratorSet& gens, const Element& a, const Element& b);
Element power(const GeneratorSet& gens, const Element& a, int k);
Element generator_element(const GeneratorSet& gens, std::size_t i);

/// Moves an element between generator sets by generator name. Throws when a
/// generator is missing from the target set.
Element transport(const GeneratorSet& from, const GeneratorSet& to, const Element& e);

/// Extends generator images to the derivation of the given degree:
/// D(ab) = D(a) b + (-1)^{degree |a|} a D(b). Empty images mean zero.
Element apply_derivation(const GeneratorSet& gens, const std::vector<Element>& images, int degree,
                         const Element& e);

std::string to_string(const GeneratorSet& gens, const Monomial& m);
std::string to_string(const GeneratorSet& gens, const Element& e);

}  // namespace rht
