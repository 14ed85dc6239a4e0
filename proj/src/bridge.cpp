#include "rht/bridge.hpp"

#include <map>

#include "rht/errors.hpp"

namespace rht {

Element CstarModel::linear_part(std::size_t i) const {
  Element out;
  for (const auto& [m, c] : algebra->differential_of(i).terms()) {
    if (m.length() == 1) out.add_term(m, c);
  }
  return out;
}

Element CstarModel::quadratic_part(std::size_t i) const {
  Element out;
  for (const auto& [m, c] : algebra->differential_of(i).terms()) {
    if (m.length() == 2) out.add_term(m, c);
  }
  return out;
}

namespace {

std::string dual_name(int degree, std::size_t index, std::size_t count) {
  std::string s = "v" + std::to_string(degree);
  if (count > 1) s += "_" + std::to_string(index + 1);
  return s;
}

}  // namespace

CstarModel cstar(const DglView& l, int max_degree) {
  if (max_degree < 2) throw Error("cstar needs max_degree >= 2");
  std::vector<Generator> gens;
  std::vector<std::pair<int, std::size_t>> duals;
  for (int n = 1; n < max_degree; ++n) {
    const std::size_t dim = l.dimension(n);
    for (std::size_t i = 0; i < dim; ++i) {
      gens.push_back({dual_name(n + 1, i, dim), n + 1});
      duals.push_back({n, i});
    }
  }
  GeneratorSet gs(gens);
  // generator index of the dual of (n, i)
  std::map<std::pair<int, std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < gens.size(); ++k) index[duals[k]] = gs.index(gens[k].name);
  std::vector<std::pair<int, std::size_t>> dual_of(gs.size());
  for (const auto& [key, g] : index) dual_of[g] = key;

  std::vector<Element> d(gs.size());
  auto v = [&](int n, std::size_t i) { return generator_element(gs, index.at({n, i})); };

  // d0: for each e_j in L_n with n + 1 < max_degree, d e_j = sum_k D_kj e_k
  for (int n = 2; n < max_degree; ++n) {
    Matrix dm = l.boundary_matrix(n);
    for (std::size_t j = 0; j < dm.cols(); ++j) {
      for (std::size_t k = 0; k < dm.rows(); ++k) {
        if (sgn(dm(k, j)) == 0) continue;
        // |v_j| = n + 1
        d[index.at({n - 1, k})] += Rational(-sign_of_parity(n + 1)) * dm(k, j) * v(n, j);
      }
    }
  }
  // d1 from brackets [e_i, e_j] with |e_i| + |e_j| < max_degree
  for (int p = 1; p < max_degree; ++p) {
    for (int q = 1; p + q < max_degree; ++q) {
      for (std::size_t i = 0; i < l.dimension(p); ++i) {
        Vector x = unit_vector(l.dimension(p), i);
        for (std::size_t j = 0; j < l.dimension(q); ++j) {
          Vector c = l.bracket(p, x, q, unit_vector(l.dimension(q), j));
          if (is_zero(c)) continue;
          Element vv = multiply(gs, v(p, i), v(q, j));
          vv *= Rational(sign_of_parity(static_cast<long long>(q + 1) * p), 2);
          for (std::size_t k = 0; k < c.size(); ++k) {
            if (sgn(c[k]) != 0) d[index.at({p + q, k})] += c[k] * vv;
          }
        }
      }
    }
  }
  std::vector<bool> partial(gs.size(), false);
  for (std::size_t g = 0; g < gs.size(); ++g) {
    partial[g] = gs.degree(g) == max_degree && l.dimension(max_degree) > 0;
  }
  CstarModel out;
  out.algebra = std::make_shared<const SullivanAlgebra>(gs, std::move(d), std::move(partial));
  out.max_degree = max_degree;
  out.dual_of = std::move(dual_of);
  for (std::size_t g = 0; g < gs.size(); ++g) {
    const Element& dg = out.algebra->differential_of(g);
    for (const auto& [m, c] : dg.terms()) {
      if (m.length() != 1 && m.length() != 2)
        throw InvariantViolation("cstar differential outside V + ∧^2 V");
    }
  }
  return out;
}

SuspensionDerivation::SuspensionDerivation(SullivanPtr algebra, int p, std::vector<Element> images)
    : algebra_(std::move(algebra)), p_(p), images_(std::move(images)) {}

Element SuspensionDerivation::operator()(const Element& e) const {
  // odd p: sign (-1)^{|a|}; even p: none. Both are (-1)^{p|a|}.
  return apply_derivation(algebra_->generators(), images_, p_, e);
}

Element apply_suspension(const SuspensionDerivation& s, const Element& e) { return s(e); }

SphereMappingModel sphere_mapping_space_model(SullivanPtr y, int p,
                                              std::optional<std::vector<int>> source_lower) {
  if (p < 1) throw Error("sphere dimension must be positive");
  if (!y->is_minimal()) throw Error("sphere mapping model needs a minimal Sullivan algebra");
  const GeneratorSet& z = y->generators();
  std::vector<Generator> gens(z.all());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z.degree(i) <= p)
      throw ConnectivityViolation("generator " + z[i].name + " has degree " +
                                  std::to_string(z.degree(i)) + " <= p = " + std::to_string(p) +
                                  ", so " + z[i].name + "_bar would have degree <= 0");
    gens.push_back({z[i].name + "_bar", z.degree(i) - p});
  }
  GeneratorSet gs(gens);
  std::vector<std::size_t> base(z.size()), bar(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    base[i] = gs.index(z[i].name);
    bar[i] = gs.index(z[i].name + "_bar");
  }
  std::vector<Element> s_images(gs.size());
  for (std::size_t i = 0; i < z.size(); ++i) s_images[base[i]] = generator_element(gs, bar[i]);

  auto free_alg = std::make_shared<const SullivanAlgebra>(SullivanAlgebra::free(gs));
  SuspensionDerivation s0(free_alg, p, s_images);
  std::vector<Element> d(gs.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Element dz = transport(z, gs, y->differential_of(i));
    d[base[i]] = dz;
    d[bar[i]] = Rational(sign_of_parity(p)) * s0(dz);
  }
  auto alg = std::make_shared<const SullivanAlgebra>(gs, std::move(d));
  if (!alg->is_minimal()) throw InvariantViolation("sphere mapping model is not minimal");

  std::vector<Vector> incl;
  for (std::size_t i = 0; i < z.size(); ++i)
    incl.push_back(alg->to_vector(z.degree(i), alg->generator(base[i])));
  std::vector<Vector> proj(gs.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    proj[base[i]] = y->to_vector(z.degree(i), y->generator(i));
    proj[bar[i]] = zero_vector(y->dimension(z.degree(i) - p));
  }
  SphereMappingModel out{alg,
                         y,
                         p,
                         base,
                         bar,
                         SuspensionDerivation(alg, p, s_images),
                         CdgaMorphism::from_generator_images(y, alg, std::move(incl)),
                         CdgaMorphism::from_generator_images(alg, y, std::move(proj)),
                         std::nullopt};
  if (source_lower) {
    if (source_lower->size() != z.size()) throw Error("lower grading does not match the generators");
    std::vector<int> lower(gs.size());
    for (std::size_t i = 0; i < z.size(); ++i) lower[base[i]] = lower[bar[i]] = (*source_lower)[i];
    out.lower_grading = std::move(lower);
  }
  const int bound = gs.max_degree() + 1;
  verify_morphism(out.inclusion, bound);
  verify_morphism(out.projection, bound);
  return out;
}

}  // namespace rht
