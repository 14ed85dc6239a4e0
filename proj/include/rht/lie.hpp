#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rht/element.hpp"
#include "rht/rational.hpp"

namespace rht {

/// A tensor word: generator indices read left to right.
using Word = std::vector<std::uint32_t>;

/// Homogeneous element of the tensor algebra T(V) on a GeneratorSet. Elements
/// of the free Lie algebra are the ones built from generators by brackets and
/// linear combinations; the tensor expansion is their canonical form.
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(int degree) : degree_(degree) {}
  static LieElement generator(const GeneratorSet& gens, std::size_t i);

  int degree() const { return degree_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& w) const;
  void add_term(const Word& w, const Rational& c);

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& s);
  LieElement operator-() const;
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& s, LieElement a) { return a *= s; }
  bool operator==(const LieElement& o) const {
    return terms_ == o.terms_ && (terms_.empty() || degree_ == o.degree_);
  }

 private:
  void check_degree(const LieElement& o) const;

  int degree_ = 0;
  std::map<Word, Rational> terms_;
};

/// Concatenation product in T(V).
LieElement tensor_product(const LieElement& x, const LieElement& y);
/// [x,y] = x*y - (-1)^{|x||y|} y*x
LieElement bracket(const LieElement& x, const LieElement& y);

std::string word_to_string(const GeneratorSet& gens, const Word& w);
/// Tensor expansion, e.g. "a*b - b*a".
std::string to_string(const GeneratorSet& gens, const LieElement& x);

}  // namespace rht
