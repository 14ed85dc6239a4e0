#include "rht/formality.hpp"

#include <map>
#include <set>

#include "rht/errors.hpp"

namespace rht {

namespace {

std::string name_from_label(const std::string& label) {
  std::string s = label;
  while (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  return is_identifier(s) ? s : std::string();
}

// Grows a Sullivan algebra generator by generator. Differentials of new
// generators are given over the current algebra; rebuild() re-indexes.
class Builder {
 public:
  Builder() : current_(std::make_shared<SullivanAlgebra>()) {}

  const SullivanPtr& current() const { return current_; }

  std::string fresh(const std::string& preferred, const std::string& fallback) {
    std::string base = preferred.empty() ? fallback : preferred;
    std::string name = base;
    for (int k = 2; used_.count(name) != 0; ++k) name = base + "_" + std::to_string(k);
    used_.insert(name);
    return name;
  }

  void add(const std::string& name, int degree, Element d) {
    gens_.push_back({name, degree});
    pending_[name] = std::move(d);
  }

  void rebuild() {
    if (pending_.empty()) return;
    GeneratorSet gs(gens_);
    const auto& old = current_->generators();
    std::vector<Element> ds;
    for (const auto& g : gs.all()) {
      auto it = pending_.find(g.name);
      if (it != pending_.end()) {
        ds.push_back(transport(old, gs, it->second));
      } else {
        ds.push_back(transport(old, gs, current_->differential_of(old.index(g.name))));
      }
    }
    pending_.clear();
    current_ = std::make_shared<SullivanAlgebra>(std::move(gs), std::move(ds));
  }

 private:
  SullivanPtr current_;
  std::vector<Generator> gens_;
  std::map<std::string, Element> pending_;
  std::set<std::string> used_;
};

std::vector<Vector> images_in_order(const SullivanAlgebra& m,
                                    const std::map<std::string, Vector>& images) {
  std::vector<Vector> out;
  for (const auto& g : m.generators().all()) out.push_back(images.at(g.name));
  return out;
}

void require_simply_connected(const GradedAlgebra& a, int max_degree) {
  if (cohomology(a, 0).dimension != 1) throw NotSimplyConnected("H^0 is not Q");
  if (max_degree >= 1 && cohomology(a, 1).dimension != 0)
    throw NotSimplyConnected("H^1 is nonzero");
}

}  // namespace

MinimalModel minimal_model(AlgebraPtr a, int max_degree) {
  if (max_degree < 0) throw Error("max degree must be non-negative");
  require_simply_connected(*a, max_degree);
  CohomologyTable ha(a, max_degree);
  Builder b;
  std::map<std::string, Vector> images;
  auto phi = [&] {
    return CdgaMorphism::from_generator_images(b.current(), a,
                                               images_in_order(*b.current(), images));
  };

  for (int n = 2; n <= max_degree; ++n) {
    // hit the new cohomology in degree n
    {
      auto f = phi();
      EchelonBasis span(a->dimension(n));
      for (const auto& col : a->differential_matrix(n - 1).columns()) span.insert(col);
      for (const auto& z : cohomology(*b.current(), n).representatives) span.insert(f.apply(n, z));
      int k = 0;
      for (const auto& r : ha.representatives(n)) {
        if (!span.insert(r)) continue;
        auto name = b.fresh(name_from_label("[" + a->format(n, r) + "]"),
                            "x" + std::to_string(n) + "_" + std::to_string(++k));
        b.add(name, n, Element());
        images[name] = r;
      }
      b.rebuild();
    }
    if (n + 1 > max_degree) continue;
    // kill the kernel in degree n+1
    auto f = phi();
    auto reps = cohomology(*b.current(), n + 1).representatives;
    if (reps.empty()) continue;
    std::vector<Vector> cols;
    for (const auto& z : reps) cols.push_back(f.apply(n + 1, z));
    for (const auto& col : a->differential_matrix(n).columns()) cols.push_back(col);
    auto kernel = kernel_basis(Matrix::from_columns(cols, a->dimension(n + 1)));
    EchelonBasis chosen(reps.size());
    for (const auto& k : kernel) {
      Vector c(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(reps.size()));
      if (!chosen.insert(c)) continue;
      Vector pre(a->dimension(n));
      for (std::size_t j = 0; j < pre.size(); ++j) pre[j] = -k[reps.size() + j];
      Element dz;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (sgn(c[i]) != 0) dz += c[i] * b.current()->from_vector(n + 1, reps[i]);
      }
      auto name = b.fresh("", "y" + std::to_string(n));
      b.add(name, n, std::move(dz));
      images[name] = pre;
    }
    b.rebuild();
  }

  MinimalModel out{b.current(), phi(), max_degree};
  if (!out.algebra->is_minimal()) throw InvariantViolation("minimal model is not minimal");
  if (!check_morphism(out.map, max_degree).quasi_isomorphism_up_to_bound())
    throw InvariantViolation("minimal model map is not a quasi-isomorphism up to the bound");
  return out;
}

int BigradedModel::lower_of(const Monomial& m) const {
  int k = 0;
  for (const auto& f : m.factors) k += f.exponent * lower.at(f.gen);
  return k;
}

std::optional<std::string> BigradedModel::grading_violation() const {
  const auto& gens = algebra->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& [m, c] : algebra->differential_of(i).terms()) {
      if (lower_of(m) != lower[i] - 1) return gens[i].name;
    }
  }
  return std::nullopt;
}

BigradedModel bigraded_model(std::shared_ptr<const FiniteCdga> h, int max_degree) {
  if (max_degree < 0) throw Error("max degree must be non-negative");
  if (!h->has_zero_differential()) throw Error("bigraded model needs zero differential");
  require_simply_connected(*h, max_degree);

  Builder b;
  std::map<std::string, int> lower;
  std::map<std::string, Vector> rho;
  for (int n = 2; n <= max_degree; ++n) {
    EchelonBasis dec(h->dimension(n));
    for (int p = 2; p + 2 <= n; ++p) {
      for (std::size_t i = 0; i < h->dimension(p); ++i) {
        for (std::size_t j = 0; j < h->dimension(n - p); ++j) {
          dec.insert(h->basis_product(p, i, n - p, j));
        }
      }
    }
    int count = 0;
    for (std::size_t k = 0; k < h->dimension(n); ++k) {
      Vector e = unit_vector(h->dimension(n), k);
      if (!dec.insert(e)) continue;
      auto name = b.fresh(name_from_label(h->basis_label(n, k)),
                          "x" + std::to_string(n) + "_" + std::to_string(++count));
      b.add(name, n, Element());
      lower[name] = 0;
      rho[name] = e;
    }
  }
  b.rebuild();

  auto lower_vector = [&](const SullivanAlgebra& m) {
    std::vector<int> out;
    for (const auto& g : m.generators().all()) out.push_back(lower.at(g.name));
    return out;
  };

  for (int n = 2; n + 1 <= max_degree; ++n) {
    const auto& m = *b.current();
    BigradedModel view{b.current(), lower_vector(m), std::nullopt, max_degree};
    const auto& top = m.basis(n + 1);
    const auto& below = m.basis(n);
    int kmax = 0;
    for (const auto& mono : top) kmax = std::max(kmax, view.lower_of(mono));
    Matrix d_top = m.differential_matrix(n + 1);
    Matrix d_below = m.differential_matrix(n);
    auto rho_map = CdgaMorphism::from_generator_images(b.current(), h, images_in_order(m, rho));

    for (int k = 0; k <= kmax; ++k) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < top.size(); ++i) {
        if (view.lower_of(top[i]) == k) idx.push_back(i);
      }
      if (idx.empty()) continue;
      Matrix restricted(d_top.rows(), idx.size());
      for (std::size_t r = 0; r < d_top.rows(); ++r) {
        for (std::size_t c = 0; c < idx.size(); ++c) restricted(r, c) = d_top(r, idx[c]);
      }
      EchelonBasis classes(top.size());
      for (std::size_t j = 0; j < below.size(); ++j) {
        if (view.lower_of(below[j]) == k + 1) classes.insert(d_below.column(j));
      }
      std::vector<Vector> reps;
      for (const auto& z : kernel_basis(restricted)) {
        Vector full(top.size());
        for (std::size_t c = 0; c < idx.size(); ++c) full[idx[c]] = z[c];
        if (classes.insert(full)) reps.push_back(std::move(full));
      }
      if (reps.empty()) continue;

      std::vector<Vector> targets;
      if (k == 0) {
        std::vector<Vector> cols;
        for (const auto& z : reps) cols.push_back(rho_map.apply(n + 1, z));
        for (const auto& c : kernel_basis(Matrix::from_columns(cols, h->dimension(n + 1)))) {
          Vector t(top.size());
          for (std::size_t i = 0; i < reps.size(); ++i) axpy(t, c[i], reps[i]);
          targets.push_back(std::move(t));
        }
      } else {
        targets = reps;
      }
      for (const auto& t : targets) {
        auto name = b.fresh("", "y" + std::to_string(n));
        b.add(name, n, m.from_vector(n + 1, t));
        lower[name] = k + 1;
        rho[name] = zero_vector(h->dimension(n));
      }
    }
    b.rebuild();
  }

  const auto& m = *b.current();
  BigradedModel out{b.current(), lower_vector(m),
                    CdgaMorphism::from_generator_images(b.current(), h, images_in_order(m, rho)),
                    max_degree};
  if (auto bad = out.grading_violation())
    throw InvariantViolation("bigrading law fails on generator " + *bad);
  if (!m.is_minimal()) throw InvariantViolation("bigraded model is not minimal");
  if (!check_morphism(*out.rho, max_degree).quasi_isomorphism_up_to_bound())
    throw InvariantViolation("rho is not a quasi-isomorphism up to the bound");
  return out;
}

std::optional<Lemma37Witness> lemma37_witness(const BigradedModel& b, std::size_t w,
                                              int search_degree) {
  const auto& gens = b.algebra->generators();
  if (w >= gens.size()) throw Error("no such generator");
  if (gens.odd(w)) throw Error("generator " + gens[w].name + " is odd; Lemma 3.7 needs an even one");
  if (b.lower.at(w) < 1)
    throw Error("generator " + gens[w].name + " has lower grading 0; Lemma 3.7 needs W_+");
  const int dw = gens.degree(w);
  for (int n = 2; n * dw - 1 <= search_degree; ++n) {
    Monomial wn = generator_monomial(gens, w, n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (!gens.odd(i) || b.lower[i] < 1 || gens.degree(i) != n * dw - 1) continue;
      Rational c = b.algebra->differential_of(i).coefficient(wn);
      if (sgn(c) == 0) continue;
      Lemma37Witness out;
      out.w = w;
      out.w_prime = i;
      out.scale = Rational(1) / c;
      out.n = n;
      out.omega = out.scale * b.algebra->differential_of(i) - Element::monomial(wn);
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace rht
