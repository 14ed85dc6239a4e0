#include "rht/element.hpp"

#include <algorithm>
#include <cctype>

#include "rht/errors.hpp"

namespace rht {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
  std::stable_sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.name < b.name;
  });
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (!is_identifier(g.name)) throw Error("invalid generator name '" + g.name + "'");
    if (g.degree < 1)
      throw Error("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                  " (degrees must be >= 1)");
    if (!by_name_.emplace(g.name, i).second)
      throw Error("duplicate generator '" + g.name + "'");
  }
}

std::optional<std::size_t> GeneratorSet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t GeneratorSet::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error("unknown generator '" + name + "'");
  return *i;
}

int GeneratorSet::max_degree() const {
  int m = 0;
  for (const auto& g : gens_) m = std::max(m, g.degree);
  return m;
}

int Monomial::length() const {
  int n = 0;
  for (const auto& f : factors) n += f.exponent;
  return n;
}

int Monomial::exponent_of(std::size_t gen) const {
  for (const auto& f : factors) {
    if (f.gen == gen) return f.exponent;
  }
  return 0;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree != b.degree) return a.degree < b.degree;
  const std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Factor& fa = a.factors[i];
    const Factor& fb = b.factors[i];
    if (fa.gen != fb.gen) return fa.gen < fb.gen;  // a has the earlier generator
    if (fa.exponent != fb.exponent) return fa.exponent > fb.exponent;
  }
  return a.factors.size() > b.factors.size();
}

Monomial make_monomial(const GeneratorSet& gens, std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
  Monomial m;
  for (const auto& f : factors) {
    if (f.exponent <= 0) continue;
    if (!m.factors.empty() && m.factors.back().gen == f.gen) {
      m.factors.back().exponent += f.exponent;
    } else {
      m.factors.push_back(f);
    }
  }
  for (const auto& f : m.factors) m.degree += f.exponent * gens.degree(f.gen);
  return m;
}

Monomial generator_monomial(const GeneratorSet& gens, std::size_t i, int exponent) {
  return make_monomial(gens, {Factor{i, exponent}});
}

std::optional<std::pair<int, Monomial>> multiply(const GeneratorSet& gens,
                                                 const Monomial& a,
                                                 const Monomial& b) {
  // Sign: each odd factor of b moves left past the odd factors of a with a
  // larger generator index.
  int swaps = 0;
  for (const auto& fb : b.factors) {
    if (!gens.odd(fb.gen)) continue;
    for (const auto& fa : a.factors) {
      if (!gens.odd(fa.gen)) continue;
      if (fa.gen == fb.gen) return std::nullopt;
      if (fa.gen > fb.gen) ++swaps;
    }
  }
  Monomial out;
  out.degree = a.degree + b.degree;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() ||
        (i < a.factors.size() && a.factors[i].gen < b.factors[j].gen)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].gen < a.factors[i].gen) {
      out.factors.push_back(b.factors[j++]);
    } else {
      out.factors.push_back({a.factors[i].gen, a.factors[i].exponent + b.factors[j].exponent});
      ++i;
      ++j;
    }
  }
  return std::make_pair(swaps % 2 == 0 ? 1 : -1, std::move(out));
}

Element Element::unit() { return monomial(Monomial{}, 1); }

Element Element::scalar(const Rational& c) { return monomial(Monomial{}, c); }

Element Element::monomial(const Monomial& m, const Rational& c) {
  Element e;
  e.add_term(m, c);
  return e;
}

std::optional<int> Element::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree;
  for (const auto& [m, c] : terms_) {
    if (m.degree != d) return std::nullopt;
  }
  return d;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Element Element::operator-() const {
  Element e(*this);
  e *= Rational(-1);
  return e;
}

Element multiply(const GeneratorSet& gens, const Element& a, const Element& b) {
  Element out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = multiply(gens, ma, mb);
      if (!prod) continue;
      out.add_term(prod->second, prod->first * ca * cb);
    }
  }
  return out;
}

Element power(const GeneratorSet& gens, const Element& a, int k) {
  Element out = Element::unit();
  for (int i = 0; i < k; ++i) out = multiply(gens, out, a);
  return out;
}

Element generator_element(const GeneratorSet& gens, std::size_t i) {
  return Element::monomial(generator_monomial(gens, i));
}

Element transport(const GeneratorSet& from, const GeneratorSet& to, const Element& e) {
  Element out;
  for (const auto& [m, c] : e.terms()) {
    std::vector<Factor> fs;
    for (const auto& f : m.factors) fs.push_back({to.index(from[f.gen].name), f.exponent});
    // Reordering odd factors can introduce a sign; rebuild by multiplication.
    Element prod = Element::unit();
    for (const auto& f : fs) {
      prod = multiply(to, prod, Element::monomial(generator_monomial(to, f.gen, f.exponent)));
    }
    prod *= c;
    out += prod;
  }
  return out;
}

std::string to_string(const GeneratorSet& gens, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (const auto& f : m.factors) {
    if (!s.empty()) s += "*";
    s += gens[f.gen].name;
    if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

std::string to_string(const GeneratorSet& gens, const Element& e) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Rational a = abs(c);
    bool negative = sgn(c) < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      s += to_string(a);
    } else {
      if (a != 1) s += to_string(a) + "*";
      s += to_string(gens, m);
    }
  }
  return s;
}

Element apply_derivation(const GeneratorSet& gens, const std::vector<Element>& images, int degree,
                         const Element& e) {
  Element out;
  for (const auto& [m, c] : e.terms()) {
    // D(f1 ... fk) = sum (-1)^{degree |f1..f_{i-1}|} f1 .. D(fi) .. fk, and
    // D(g^e) = e g^{e-1} D(g) since even g commutes with everything.
    Element prefix = Element::unit();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const Factor& f = m.factors[i];
      const Element& dg = images[f.gen];
      if (!dg.is_zero()) {
        Element term = dg;
        if (f.exponent > 1) {
          term = multiply(gens,
                          Element::monomial(generator_monomial(gens, f.gen, f.exponent - 1),
                                            Rational(f.exponent)),
                          dg);
        }
        std::vector<Factor> rest(m.factors.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 m.factors.end());
        Element suffix = Element::monomial(make_monomial(gens, rest));
        term = multiply(gens, multiply(gens, prefix, term), suffix);
        term *= Rational(sign_of_parity(static_cast<long long>(degree) * prefix_degree) * c);
        out += term;
      }
      prefix = multiply(gens, prefix, Element::monomial(generator_monomial(gens, f.gen, f.exponent)));
      prefix_degree += f.exponent * gens.degree(f.gen);
    }
  }
  return out;
}

}  // namespace rht
