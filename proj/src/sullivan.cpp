#include "rht/sullivan.hpp"

#include "rht/errors.hpp"

namespace rht {

std::vector<Monomial> enumerate_monomials(const GeneratorSet& gens, int n) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<Factor> current;
  // depth-first over generators, larger exponents first
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(make_monomial(gens, current));
      return;
    }
    if (i == gens.size()) return;
    const int deg = gens.degree(i);
    int max_exp = remaining / deg;
    if (gens.odd(i)) max_exp = std::min(max_exp, 1);
    for (int e = max_exp; e >= 0; --e) {
      if (e > 0) current.push_back({i, e});
      self(self, i + 1, remaining - e * deg);
      if (e > 0) current.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

SullivanAlgebra::SullivanAlgebra() : SullivanAlgebra(GeneratorSet{}, {}) {}

SullivanAlgebra::SullivanAlgebra(GeneratorSet gens, std::vector<Element> differential,
                                 std::vector<bool> partial)
    : gens_(std::make_shared<const GeneratorSet>(std::move(gens))),
      d_(std::move(differential)),
      partial_(std::move(partial)),
      cache_(std::make_shared<Cache>()) {
  if (d_.empty()) d_.resize(gens_->size());
  if (d_.size() != gens_->size())
    throw Error("differential must be given for every generator");
  if (!partial_.empty() && partial_.size() != gens_->size())
    throw Error("partial flags must match the generator count");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    const auto& g = (*gens_)[i];
    for (const auto& [m, c] : d_[i].terms()) {
      if (m.degree != g.degree + 1) {
        throw DegreeMismatch("d(" + g.name + ") has a term of degree " +
                             std::to_string(m.degree) + ", expected " +
                             std::to_string(g.degree + 1));
      }
      for (const auto& f : m.factors) {
        if (f.gen >= gens_->size()) throw Error("d(" + g.name + ") uses an unknown generator");
      }
    }
  }
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (is_partial(i)) continue;
    Element dd = d(d_[i]);
    if (!dd.is_zero()) {
      throw DifferentialNotSquareZero("d(d(" + (*gens_)[i].name + ")) = " +
                                      to_string(*gens_, dd) + " is not zero");
    }
  }
}

SullivanAlgebra SullivanAlgebra::free(GeneratorSet gens) {
  return SullivanAlgebra(std::move(gens), {});
}

bool SullivanAlgebra::has_partial_generators() const {
  for (bool p : partial_) {
    if (p) return true;
  }
  return false;
}

Element SullivanAlgebra::d(const Element& e) const { return apply_derivation(*gens_, d_, 1, e); }

bool SullivanAlgebra::is_minimal() const {
  for (const auto& e : d_) {
    for (const auto& [m, c] : e.terms()) {
      if (m.length() < 2) return false;
    }
  }
  return true;
}

SullivanAlgebra::DegreeData& SullivanAlgebra::degree_data(int n) const {
  auto it = cache_->degrees.find(n);
  if (it != cache_->degrees.end()) return it->second;
  DegreeData data;
  data.monomials = enumerate_monomials(*gens_, n);
  for (std::size_t i = 0; i < data.monomials.size(); ++i) data.index.emplace(data.monomials[i], i);
  return cache_->degrees.emplace(n, std::move(data)).first->second;
}

const std::vector<Monomial>& SullivanAlgebra::basis(int n) const {
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).monomials;
}

std::optional<std::size_t> SullivanAlgebra::index_of(const Monomial& m) const {
  std::lock_guard lock(cache_->mutex);
  const auto& data = degree_data(m.degree);
  auto it = data.index.find(m);
  if (it == data.index.end()) return std::nullopt;
  return it->second;
}

std::size_t SullivanAlgebra::dimension(int n) const {
  if (n < 0) return 0;
  return basis(n).size();
}

Vector SullivanAlgebra::to_vector(int n, const Element& e) const {
  Vector v(dimension(n), Rational(0));
  for (const auto& [m, c] : e.terms()) {
    if (m.degree != n)
      throw NonHomogeneousInput("element " + format(e) + " is not homogeneous of degree " +
                                std::to_string(n));
    auto idx = index_of(m);
    if (!idx) throw InvariantViolation("monomial missing from degree basis");
    v[*idx] = c;
  }
  return v;
}

Element SullivanAlgebra::from_vector(int n, const Vector& v) const {
  const auto& b = basis(n);
  Element e;
  for (std::size_t i = 0; i < v.size(); ++i) e.add_term(b[i], v[i]);
  return e;
}

Matrix SullivanAlgebra::differential_matrix(int n) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto& data = degree_data(n);
    if (data.differential) return *data.differential;
  }
  const auto& src = basis(n);
  const std::size_t rows = dimension(n + 1);
  Matrix m(rows, src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    Vector col = to_vector(n + 1, d(Element::monomial(src[j])));
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = col[i];
  }
  std::lock_guard lock(cache_->mutex);
  degree_data(n).differential = m;
  return m;
}

Vector SullivanAlgebra::multiply(int p, const Vector& a, int q, const Vector& b) const {
  return to_vector(p + q, multiply(from_vector(p, a), from_vector(q, b)));
}

std::string SullivanAlgebra::basis_label(int n, std::size_t i) const {
  return to_string(*gens_, basis(n)[i]);
}

std::optional<int> SullivanAlgebra::top_degree() const {
  for (const auto& g : gens_->all()) {
    if (!g.odd()) return std::nullopt;
  }
  int top = 0;
  for (const auto& g : gens_->all()) top += g.degree;
  return top;
}

}  // namespace rht
