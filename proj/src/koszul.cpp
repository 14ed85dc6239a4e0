#include <sstream>

#include "rht/errors.hpp"
#include "rht/formality.hpp"

namespace rht {

std::string RegularSequenceVerdict::witness() const {
  if (status == RegularityStatus::RegularUpToBound) return "";
  std::ostringstream os;
  os << "(" << to_string(ring, multiplier) << ")*(" << to_string(ring, sequence[index]) << ")";
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (coefficients[j].is_zero()) continue;
    os << " - (" << to_string(ring, coefficients[j]) << ")*(" << to_string(ring, sequence[j])
       << ")";
  }
  os << " = 0";
  return os.str();
}

RegularSequenceVerdict regular_sequence_check(const GeneratorSet& gens,
                                              const std::vector<Element>& polys, int max_degree) {
  std::vector<Generator> even;
  for (const auto& g : gens.all()) {
    if (!g.odd()) even.push_back(g);
  }
  RegularSequenceVerdict v;
  v.bound = max_degree;
  v.ring = GeneratorSet(even);
  std::vector<int> deg;
  for (const auto& f : polys) {
    for (const auto& [m, c] : f.terms()) {
      for (const auto& fac : m.factors) {
        if (gens.odd(fac.gen))
          throw Error("odd generator " + gens[fac.gen].name + " in a regular sequence input");
      }
    }
    auto d = f.homogeneous_degree();
    if (!f.is_zero() && !d) throw NonHomogeneousInput(to_string(gens, f) + " is not homogeneous");
    if (!f.is_zero() && *d <= 0)
      throw NonHomogeneousInput(to_string(gens, f) + " has no positive degree");
    deg.push_back(f.is_zero() ? 0 : *d);
    v.sequence.push_back(transport(gens, v.ring, f));
  }

  const auto p = SullivanAlgebra::free(v.ring);
  auto ideal_span = [&](std::size_t upto, int n) {
    EchelonBasis span(p.dimension(n));
    for (std::size_t j = 0; j < upto; ++j) {
      if (deg[j] > n || v.sequence[j].is_zero()) continue;
      for (const auto& mu : p.basis(n - deg[j])) {
        span.insert(p.to_vector(n, p.multiply(Element::monomial(mu), v.sequence[j])));
      }
    }
    return span;
  };

  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (int n = deg[i]; n <= max_degree; ++n) {
      const int m = n - deg[i];
      const auto& src = p.basis(m);
      if (src.empty()) continue;
      std::vector<Vector> cols;
      for (const auto& beta : src) {
        cols.push_back(p.to_vector(n, p.multiply(Element::monomial(beta), v.sequence[i])));
      }
      std::vector<std::pair<std::size_t, Monomial>> spans;
      for (std::size_t j = 0; j < i; ++j) {
        if (deg[j] > n || v.sequence[j].is_zero()) continue;
        for (const auto& mu : p.basis(n - deg[j])) {
          cols.push_back(p.to_vector(n, p.multiply(Element::monomial(mu), v.sequence[j])));
          spans.emplace_back(j, mu);
        }
      }
      auto kernel = kernel_basis(Matrix::from_columns(cols, p.dimension(n)));
      if (kernel.empty()) continue;
      auto ideal = ideal_span(i, m);
      for (auto k : kernel) {
        Vector g(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(src.size()));
        if (ideal.contains(g)) continue;
        // monic multiplier
        for (const auto& c : g) {
          if (sgn(c) == 0) continue;
          k = scaled(k, Rational(1) / c);
          g = scaled(g, Rational(1) / c);
          break;
        }
        v.status = RegularityStatus::NotRegular;
        v.index = i;
        v.degree = n;
        v.multiplier = p.from_vector(m, g);
        v.coefficients.assign(i, Element());
        for (std::size_t s = 0; s < spans.size(); ++s) {
          const auto& c = k[src.size() + s];
          if (sgn(c) != 0) v.coefficients[spans[s].first].add_term(spans[s].second, -c);
        }
        return v;
      }
    }
  }
  return v;
}

KoszulResult koszul_formality(SullivanPtr alg, int max_degree) {
  KoszulResult r;
  const auto& gens = alg->generators();
  std::vector<Element> seq;
  std::vector<Generator> kept;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& d = alg->differential_of(i);
    if (!gens.odd(i)) {
      if (!d.is_zero()) {
        r.reason = "even generator " + gens[i].name + " is not closed";
        return r;
      }
      kept.push_back(gens[i]);
      continue;
    }
    if (d.is_zero()) {
      kept.push_back(gens[i]);
      continue;
    }
    for (const auto& [m, c] : d.terms()) {
      for (const auto& f : m.factors) {
        if (gens.odd(f.gen)) {
          r.reason = "d(" + gens[i].name + ") involves odd generator " + gens[f.gen].name;
          return r;
        }
      }
    }
    seq.push_back(d);
  }
  r.applicable = true;
  r.regularity = regular_sequence_check(gens, seq, max_degree + 1);
  if (r.regularity->status == RegularityStatus::NotRegular) {
    r.reason = "differentials of the odd generators are not a regular sequence";
    return r;
  }

  // psi: ∧(E, O) -> Q[E]/(d O) ⊗ ∧(closed odd), killing the other odd generators
  GeneratorSet target_gens(kept);
  auto free = SullivanAlgebra::free(target_gens);
  std::vector<Element> relations;
  for (const auto& f : seq) relations.push_back(transport(gens, target_gens, f));
  auto target = std::make_shared<const FiniteCdga>(
      quotient_algebra(free, relations, max_degree, false));
  std::vector<Vector> images;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int n = gens.degree(i);
    auto t = target_gens.find(gens[i].name);
    if (t && n <= max_degree) {
      images.push_back(
          quotient_coordinates(free, relations, n, generator_element(target_gens, *t)));
    } else {
      images.push_back(zero_vector(target->dimension(n)));
    }
  }
  auto psi = CdgaMorphism::from_generator_images(alg, target, std::move(images));
  if (!check_morphism(psi, max_degree).quasi_isomorphism_up_to_bound()) {
    r.reason = "quotient map is not a quasi-isomorphism below the bound";
    return r;
  }
  FormalityVerdict v;
  v.status = FormalityStatus::CertifiedFormal;
  v.bound = max_degree;
  v.formal = FormalityWitness{"koszul", psi, std::nullopt, r.regularity};
  v.detail = "Koszul complex on a regular sequence";
  r.verdict = std::move(v);
  return r;
}

}  // namespace rht
