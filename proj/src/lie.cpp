#include "rht/lie.hpp"

#include "rht/errors.hpp"

namespace rht {

LieElement LieElement::generator(const GeneratorSet& gens, std::size_t i) {
  LieElement x(gens.degree(i));
  x.terms_[Word{static_cast<std::uint32_t>(i)}] = 1;
  return x;
}

Rational LieElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LieElement::add_term(const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void LieElement::check_degree(const LieElement& o) const {
  if (!terms_.empty() && !o.terms_.empty() && degree_ != o.degree_)
    throw NonHomogeneousInput("adding Lie elements of degrees " + std::to_string(degree_) +
                              " and " + std::to_string(o.degree_));
}

LieElement& LieElement::operator+=(const LieElement& o) {
  check_degree(o);
  if (terms_.empty()) degree_ = o.degree_;
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  check_degree(o);
  if (terms_.empty()) degree_ = o.degree_;
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

LieElement tensor_product(const LieElement& x, const LieElement& y) {
  LieElement out(x.degree() + y.degree());
  for (const auto& [u, a] : x.terms()) {
    for (const auto& [v, b] : y.terms()) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add_term(w, a * b);
    }
  }
  return out;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  LieElement out = tensor_product(x, y);
  LieElement swapped = tensor_product(y, x);
  if ((x.degree() * y.degree()) % 2 == 0)
    out -= swapped;
  else
    out += swapped;
  return out;
}

std::string word_to_string(const GeneratorSet& gens, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += gens[w[i]].name;
  }
  return s;
}

std::string to_string(const GeneratorSet& gens, const LieElement& x) {
  std::string s;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    Rational a = abs(c);
    if (first)
      s += sgn(c) < 0 ? "-" : "";
    else
      s += sgn(c) < 0 ? " - " : " + ";
    first = false;
    if (a != 1) s += to_string(a) + "*";
    s += word_to_string(gens, w);
  }
  return first ? "0" : s;
}

}  // namespace rht
