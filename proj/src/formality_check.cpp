#include <algorithm>
#include <tuple>

#include "rht/cdga_ops.hpp"
#include "rht/errors.hpp"
#include "rht/formality.hpp"

namespace rht {

std::string to_string(FormalityStatus s) {
  switch (s) {
    case FormalityStatus::CertifiedFormal:
      return "CERTIFIED_FORMAL";
    case FormalityStatus::CertifiedNonformal:
      return "CERTIFIED_NONFORMAL";
    case FormalityStatus::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

// Builds psi: M -> (H, 0) one degree at a time. On the degree-n generators
// the condition [psi(z)] = [phi(z)] for every cocycle z is linear once lower
// degrees are frozen. Alternatives are x0 + k_i and x0 - k_i over a kernel
// basis of that system.
class PsiSearch {
 public:
  PsiSearch(const SullivanAlgebra& m, const FiniteCdga& h, const CdgaMorphism& phi,
            const CohomologyTable& table, int bound, std::size_t cap)
      : m_(m), h_(h), phi_(phi), table_(table), bound_(bound), cap_(cap),
        images_(m.num_generators()) {
    by_degree_.resize(static_cast<std::size_t>(bound + 1));
    for (std::size_t i = 0; i < m.num_generators(); ++i) {
      const int d = m.generators().degree(i);
      if (d <= bound) by_degree_[static_cast<std::size_t>(d)].push_back(i);
    }
  }

  bool run() { return dfs(1); }

  std::vector<Vector> images() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      out.push_back(images_[i] ? *images_[i]
                               : zero_vector(h_.dimension(m_.generators().degree(i))));
    }
    return out;
  }

  std::size_t branches() const { return branches_; }
  bool capped() const { return capped_; }
  int failing_degree() const { return failing_; }

 private:
  Vector eval(const Element& e, int n) const {
    Vector out = zero_vector(h_.dimension(n));
    for (const auto& [mono, c] : e.terms()) {
      Vector acc = h_.unit();
      int d = 0;
      for (const auto& f : mono.factors) {
        const int g = m_.generators().degree(f.gen);
        for (int k = 0; k < f.exponent; ++k) {
          acc = h_.multiply(d, acc, g, *images_[f.gen]);
          d += g;
        }
      }
      axpy(out, c, acc);
    }
    return out;
  }

  bool dfs(int n) {
    if (n > bound_) return true;
    const auto& gens = by_degree_[static_cast<std::size_t>(n)];
    for (auto g : gens) {
      const auto& dg = m_.differential_of(g);
      if (!is_zero(eval(dg, n + 1))) {
        failing_ = std::max(failing_, n);
        return false;
      }
    }
    const std::size_t hn = h_.dimension(n);
    const std::size_t k = gens.size();
    auto cocycles = kernel_basis(m_.differential_matrix(n));
    std::vector<std::vector<Rational>> coef;
    std::vector<Vector> rhs;
    for (const auto& z : cocycles) {
      Element e = m_.from_vector(n, z);
      std::vector<Rational> row;
      Element rest = e;
      for (auto g : gens) {
        Monomial gm = generator_monomial(m_.generators(), g);
        Rational c = e.coefficient(gm);
        row.push_back(c);
        if (sgn(c) != 0) rest.add_term(gm, -c);
      }
      Vector r = table_.class_of(n, phi_.apply(n, z));
      axpy(r, Rational(-1), eval(rest, n));
      coef.push_back(std::move(row));
      rhs.push_back(std::move(r));
    }

    std::vector<Vector> candidates;
    if (k * hn == 0) {
      for (const auto& r : rhs) {
        if (!is_zero(r)) {
          failing_ = std::max(failing_, n);
          return false;
        }
      }
      candidates.emplace_back();
    } else {
      Matrix sys(cocycles.size() * hn, k * hn);
      Vector b(cocycles.size() * hn);
      for (std::size_t z = 0; z < cocycles.size(); ++z) {
        for (std::size_t t = 0; t < hn; ++t) {
          for (std::size_t g = 0; g < k; ++g) sys(z * hn + t, g * hn + t) = coef[z][g];
          b[z * hn + t] = rhs[z][t];
        }
      }
      auto x0 = cocycles.empty() ? std::optional<Vector>(zero_vector(k * hn)) : solve(sys, b);
      if (!x0) {
        failing_ = std::max(failing_, n);
        return false;
      }
      candidates.push_back(*x0);
      auto kernel = cocycles.empty() ? kernel_basis(Matrix(0, k * hn)) : kernel_basis(sys);
      for (const auto& kv : kernel) candidates.push_back(add(*x0, kv));
      for (const auto& kv : kernel) candidates.push_back(add(*x0, scaled(kv, Rational(-1))));
    }

    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (c > 0) {
        if (branches_ >= cap_) {
          capped_ = true;
          break;
        }
        ++branches_;
      }
      for (std::size_t g = 0; g < k; ++g) {
        Vector img(hn);
        for (std::size_t t = 0; t < hn; ++t) img[t] = candidates[c][g * hn + t];
        images_[gens[g]] = std::move(img);
      }
      if (dfs(n + 1)) return true;
      if (capped_) break;
    }
    for (auto g : gens) images_[g].reset();
    return false;
  }

  const SullivanAlgebra& m_;
  const FiniteCdga& h_;
  const CdgaMorphism& phi_;
  const CohomologyTable& table_;
  int bound_;
  std::size_t cap_;
  std::vector<std::optional<Vector>> images_;
  std::vector<std::vector<std::size_t>> by_degree_;
  std::size_t branches_ = 0;
  bool capped_ = false;
  int failing_ = 0;
};

struct CohomologyGenerator {
  int degree;
  std::size_t index;
};

std::vector<CohomologyGenerator> cohomology_generators(const FiniteCdga& h, int bound) {
  std::vector<CohomologyGenerator> out;
  for (int n = 1; n <= bound; ++n) {
    EchelonBasis dec(h.dimension(n));
    for (int p = 1; p < n; ++p) {
      for (std::size_t i = 0; i < h.dimension(p); ++i) {
        for (std::size_t j = 0; j < h.dimension(n - p); ++j) dec.insert(h.basis_product(p, i, n - p, j));
      }
    }
    for (std::size_t k = 0; k < h.dimension(n); ++k) {
      if (dec.insert(unit_vector(h.dimension(n), k))) out.push_back({n, k});
    }
  }
  return out;
}

std::optional<MasseySystem> search_massey(const CohomologyTable& table, const FiniteCdga& h,
                                          int bound) {
  auto gens = cohomology_generators(h, bound);
  std::vector<std::tuple<int, std::size_t, std::size_t, std::size_t>> triples;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      for (std::size_t l = 0; l < gens.size(); ++l) {
        int n = gens[i].degree + gens[j].degree + gens[l].degree - 1;
        if (n <= bound) triples.emplace_back(n, i, j, l);
      }
    }
  }
  std::sort(triples.begin(), triples.end());
  for (const auto& [n, i, j, l] : triples) {
    const auto& a = gens[i];
    const auto& b = gens[j];
    const auto& c = gens[l];
    auto m = massey_with_table(table, a.degree, table.representatives(a.degree)[a.index], b.degree,
                               table.representatives(b.degree)[b.index], c.degree,
                               table.representatives(c.degree)[c.index]);
    if (m && !m->contains_zero) return m;
  }
  return std::nullopt;
}

}  // namespace

FormalityVerdict formality_check(AlgebraPtr a, int max_degree, const FormalityOptions& options) {
  if (max_degree < 0) throw Error("max degree must be non-negative");
  FormalityVerdict v;
  v.bound = max_degree;
  std::string koszul_note;
  if (options.try_koszul) {
    if (auto s = std::dynamic_pointer_cast<const SullivanAlgebra>(a)) {
      auto k = koszul_formality(s, max_degree);
      if (k.verdict) {
        verify_certificate(*k.verdict);
        return *k.verdict;
      }
      koszul_note = "koszul route: " + (k.applicable ? k.reason : "not applicable (" + k.reason + ")");
    }
  }

  auto model = minimal_model(a, max_degree);
  CohomologyTable table(a, max_degree);
  auto h = std::make_shared<const FiniteCdga>(cohomology_algebra(table));
  PsiSearch search(*model.algebra, *h, model.map, table, max_degree, options.backtrack_cap);
  const bool found = search.run();
  v.branches = search.branches();
  if (found) {
    auto psi = CdgaMorphism::from_generator_images(model.algebra, h, search.images());
    v.status = FormalityStatus::CertifiedFormal;
    v.formal = FormalityWitness{"psi", psi, model.map, std::nullopt};
    v.detail = "quasi-isomorphism from the minimal model to (H, 0)";
    verify_certificate(v);
    return v;
  }

  if (options.search_massey) {
    if (auto m = search_massey(table, *h, max_degree)) {
      v.status = FormalityStatus::CertifiedNonformal;
      v.massey = std::move(m);
      v.detail = "nonvanishing triple Massey product";
      verify_certificate(v);
      return v;
    }
  }

  v.status = FormalityStatus::Inconclusive;
  if (search.capped()) {
    v.detail = "backtrack cap " + std::to_string(options.backtrack_cap) + " reached";
  } else {
    v.detail = "psi search exhausted its candidates";
  }
  v.detail += "; deepest obstruction in degree " + std::to_string(search.failing_degree());
  if (options.search_massey) v.detail += "; no nonzero triple Massey product up to the bound";
  if (!koszul_note.empty()) v.detail += "; " + koszul_note;
  return v;
}

void verify_certificate(const FormalityVerdict& v) {
  if (v.status == FormalityStatus::CertifiedFormal) {
    if (!v.formal || !v.formal->psi) throw InvariantViolation("formal verdict without a witness");
    const auto& psi = *v.formal->psi;
    for (int n = 0; n <= v.bound; ++n) {
      if (!psi.target()->differential_matrix(n).is_zero())
        throw InvariantViolation("witness target has a nonzero differential");
    }
    auto rep = check_morphism(psi, v.bound);
    if (!rep.quasi_isomorphism_up_to_bound())
      throw InvariantViolation("witness is not a quasi-isomorphism up to the bound");
    if (v.formal->model) {
      auto mrep = check_morphism(*v.formal->model, v.bound);
      if (!mrep.quasi_isomorphism_up_to_bound())
        throw InvariantViolation("model map is not a quasi-isomorphism up to the bound");
      for (std::size_t n = 0; n < rep.cohomology.size(); ++n) {
        if (rep.cohomology[n].matrix != mrep.cohomology[n].matrix)
          throw InvariantViolation("H(psi) differs from H(model map) in degree " +
                                   std::to_string(n));
      }
    }
  } else if (v.status == FormalityStatus::CertifiedNonformal) {
    if (!v.massey) throw InvariantViolation("nonformal verdict without a Massey witness");
    if (!verify_massey(*v.massey) || v.massey->contains_zero)
      throw InvariantViolation("Massey witness does not verify");
  }
}

RetractTransferReport retract_transfer_check(const CdgaMorphism& f, const CdgaMorphism& g,
                                             int max_degree, const FormalityOptions& options) {
  if (f.target() != g.source() || g.target() != f.source())
    throw NotARetract("f: A -> B and g: B -> A do not compose");
  const auto& a = f.source();
  auto gf = compose(g, f, max_degree);
  for (int n = 0; n <= max_degree; ++n) {
    if (gf.matrix(n) != Matrix::identity(a->dimension(n)))
      throw NotARetract("g∘f is not the identity in degree " + std::to_string(n));
  }
  if (max_degree >= 1 && cohomology(*a, 1).dimension != 0) throw NotSimplyConnected("H^1(A) != 0");

  RetractTransferReport r;
  r.target_verdict = formality_check(f.target(), max_degree, options);
  if (r.target_verdict.status != FormalityStatus::CertifiedFormal) {
    r.summary = "B is " + to_string(r.target_verdict.status) +
                "; the proposition is not exercised at this bound";
    return r;
  }
  r.source_verdict = formality_check(a, max_degree, options);
  switch (r.source_verdict->status) {
    case FormalityStatus::CertifiedFormal:
      r.confirmed = true;
      r.summary = "confirmed: B and A certified formal up to degree " + std::to_string(max_degree);
      break;
    case FormalityStatus::Inconclusive:
      r.summary = "not confirmed at this bound: A is inconclusive (not a counterexample)";
      break;
    case FormalityStatus::CertifiedNonformal:
      r.summary = "A certified nonformal although B is formal; this contradicts the proposition";
      break;
  }
  return r;
}

}  // namespace rht
