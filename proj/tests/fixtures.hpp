#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rht/sullivan.hpp"

namespace fixtures {

using rht::Element;
using rht::GeneratorSet;
using rht::Rational;

/// coefficient times an ordered product of generator powers
struct Term {
  Rational coefficient;
  std::vector<std::pair<std::string, int>> factors;
};

inline Element poly(const GeneratorSet& gs, const std::vector<Term>& terms) {
  Element out;
  for (const auto& t : terms) {
    Element prod = Element::unit();
    for (const auto& [name, exp] : t.factors) {
      Element g = rht::generator_element(gs, gs.index(name));
      for (int k = 0; k < exp; ++k) prod = rht::multiply(gs, prod, g);
    }
    prod *= t.coefficient;
    out += prod;
  }
  return out;
}

inline std::shared_ptr<const rht::SullivanAlgebra> sullivan(
    std::vector<rht::Generator> gens, const std::map<std::string, std::vector<Term>>& d) {
  GeneratorSet gs(std::move(gens));
  std::vector<Element> diff(gs.size());
  for (const auto& [name, terms] : d) diff[gs.index(name)] = poly(gs, terms);
  return std::make_shared<const rht::SullivanAlgebra>(gs, diff);
}

/// ∧(x1,x2,y), |x_i| = 4, dy = x1 x2
inline auto y_model() {
  return sullivan({{"x1", 4}, {"x2", 4}, {"y", 7}}, {{"y", {{1, {{"x1", 1}, {"x2", 1}}}}}});
}

/// ∧(u,v), |u| = 2, dv = u^2
inline auto s2_model() { return sullivan({{"u", 2}, {"v", 3}}, {{"v", {{1, {{"u", 2}}}}}}); }

/// ∧(x,w), |x| = 4, dw = x^2
inline auto s4_model() { return sullivan({{"x", 4}, {"w", 7}}, {{"w", {{1, {{"x", 2}}}}}}); }

inline auto s3_model() { return sullivan({{"t", 3}}, {}); }

/// ∧(x3, y3, z5), dz = xy
inline auto nonformal_model() {
  return sullivan({{"x", 3}, {"y", 3}, {"z", 5}}, {{"z", {{1, {{"x", 1}, {"y", 1}}}}}});
}

/// Mapping-space model of F(S^2, Y) in the displayed form dyb = x1b x2 + x1 x2b.
inline auto mapping_s2_model() {
  return sullivan({{"x1", 4}, {"x2", 4}, {"y", 7}, {"x1_bar", 2}, {"x2_bar", 2}, {"y_bar", 5}},
                  {{"y", {{1, {{"x1", 1}, {"x2", 1}}}}},
                   {"y_bar", {{1, {{"x1_bar", 1}, {"x2", 1}}}, {1, {{"x1", 1}, {"x2_bar", 1}}}}}});
}

/// Random homogeneous element of degree n with small rational coefficients.
inline Element random_element(const rht::SullivanAlgebra& a, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  Element e;
  for (const auto& m : a.basis(n)) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    e.add_term(m, c);
  }
  return e;
}

}  // namespace fixtures
