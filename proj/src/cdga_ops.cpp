#include "rht/cdga_ops.hpp"

#include "rht/errors.hpp"

namespace rht {

FiniteCdga cohomology_algebra(const CohomologyTable& table) {
  const auto& A = *table.algebra();
  GradedBasis basis;
  for (int n = 0; n <= table.max_degree(); ++n) {
    std::vector<std::string> labels;
    for (const auto& rep : table.representatives(n)) labels.push_back("[" + A.format(n, rep) + "]");
    basis.labels.push_back(std::move(labels));
  }
  FiniteCdga::Options opts;
  opts.validate = false;
  auto top = A.top_degree();
  opts.complete = top.has_value() && *top <= table.max_degree();
  return FiniteCdga::with_zero_differential(
      std::move(basis),
      [&](int p, std::size_t i, int q, std::size_t j) {
        Vector prod = A.multiply(p, table.representatives(p)[i], q, table.representatives(q)[j]);
        return table.class_of(p + q, prod);
      },
      opts);
}

FiniteModel finite_dimensional_model(SullivanPtr algebra, int check_bound,
                                     std::optional<int> top_degree) {
  if (check_bound < 1) throw Error("check bound must be positive");
  CohomologyTable table(algebra, check_bound);
  int p = 0;
  if (top_degree) {
    p = *top_degree;
    if (p < 0 || p > check_bound) throw Error("top degree outside the checked range");
    if (table.dimension(p) == 0)
      throw TopDegreeNotFound("H^" + std::to_string(p) + " vanishes; not a top degree");
    for (int n = p + 1; n <= check_bound; ++n) {
      if (table.dimension(n) != 0)
        throw TopDegreeNotFound("H^" + std::to_string(n) + " is nonzero above the stated top degree");
    }
  } else {
    for (int n = check_bound; n >= 0; --n) {
      if (table.dimension(n) != 0) {
        p = n;
        break;
      }
    }
    if (p >= check_bound || check_bound < 2 * p) {
      throw TopDegreeNotFound("cohomology does not vanish in degrees (" + std::to_string(p) + ", " +
                              std::to_string(2 * p) + "] within the check bound " +
                              std::to_string(check_bound));
    }
  }

  const SullivanAlgebra& V = *algebra;
  // complement of ker d^p: non-pivot coordinates of rref(ker d^p)
  std::vector<std::size_t> kept;
  {
    auto ker = kernel_basis(V.differential_matrix(p));
    if (!ker.empty()) kept = rref(Matrix::from_rows(ker, V.dimension(p))).pivots;
  }

  GradedBasis basis;
  for (int n = 0; n < p; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < V.dimension(n); ++i) labels.push_back(V.basis_label(n, i));
    basis.labels.push_back(std::move(labels));
  }
  {
    std::vector<std::string> labels;
    for (auto i : kept) labels.push_back(V.basis_label(p, i));
    basis.labels.push_back(std::move(labels));
  }

  auto project = [&V, p, kept](int n, const Vector& v) -> Vector {
    if (n < p) return v;
    if (n > p) return {};
    Vector out;
    out.reserve(kept.size());
    for (auto i : kept) out.push_back(v[i]);
    return out;
  };
  auto lift = [&V, p, kept](int n, std::size_t i) -> Element {
    return Element::monomial(V.basis(n)[n == p ? kept[i] : i]);
  };

  std::vector<Matrix> d;
  for (int n = 0; n <= p; ++n) {
    Matrix m(basis.dimension(n + 1), basis.dimension(n));
    if (n < p) {
      for (std::size_t j = 0; j < basis.dimension(n); ++j) {
        Vector col = project(n + 1, V.to_vector(n + 1, V.d(lift(n, j))));
        for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
      }
    }
    d.push_back(std::move(m));
  }
  FiniteCdga::Options opts;
  opts.validate = basis.total_dimension() <= 40;
  opts.complete = true;
  auto quotient = std::make_shared<const FiniteCdga>(
      basis, std::move(d),
      [&](int a, std::size_t i, int b, std::size_t j) {
        Element prod = V.multiply(lift(a, i), lift(b, j));
        return project(a + b, V.to_vector(a + b, prod));
      },
      opts);

  std::vector<Vector> images;
  for (std::size_t g = 0; g < V.num_generators(); ++g) {
    const int deg = V.generators().degree(g);
    images.push_back(project(deg, V.to_vector(deg, V.generator(g))));
  }
  auto projection = CdgaMorphism::from_generator_images(algebra, quotient, std::move(images));
  auto report = check_morphism(projection, check_bound);
  if (!report.quasi_isomorphism_up_to_bound())
    throw InvariantViolation("finite model projection is not a quasi-isomorphism");
  return FiniteModel{quotient, projection, p, kept};
}

std::optional<SphericalRetract> odd_spherical_retract(SullivanPtr algebra) {
  const SullivanAlgebra& A = *algebra;
  if (!A.is_minimal()) throw Error("odd spherical retract requires a minimal Sullivan algebra");
  for (std::size_t g = 0; g < A.num_generators(); ++g) {
    if (!A.generators().odd(g) || !A.is_closed(g)) continue;
    const Generator t = A.generators()[g];
    auto ext = std::make_shared<const SullivanAlgebra>(SullivanAlgebra::free(GeneratorSet({t})));
    auto i = CdgaMorphism::from_generator_images(ext, algebra,
                                                 {A.to_vector(t.degree, A.generator(g))});
    std::vector<Vector> q_images;
    for (std::size_t h = 0; h < A.num_generators(); ++h) {
      const int deg = A.generators().degree(h);
      Vector v(ext->dimension(deg), Rational(0));
      if (h == g) v[0] = 1;
      q_images.push_back(std::move(v));
    }
    auto q = CdgaMorphism::from_generator_images(algebra, ext, std::move(q_images));
    const int bound = A.generators().max_degree() + 1;
    verify_morphism(i, bound);
    verify_morphism(q, bound);
    if (q.apply(t.degree, i.generator_images()[0]) != Vector{Rational(1)})
      throw InvariantViolation("q∘i is not the identity on t");
    return SphericalRetract{t, g, ext, i, q};
  }
  return std::nullopt;
}

FiniteRetract push_retract(const SphericalRetract& r, const FiniteModel& model) {
  const int tdeg = r.t.degree;
  if (tdeg > model.top_degree)
    throw InvariantViolation("closed odd generator above the top cohomological degree");
  auto ext = std::make_shared<const FiniteCdga>(exterior_on_odd_generator(r.t.name, tdeg));
  const auto& A = *model.quotient;
  const SullivanAlgebra& V = *r.projection.sullivan_source();

  std::vector<Matrix> inc;
  for (int n = 0; n <= tdeg; ++n) {
    Matrix m(A.dimension(n), ext->dimension(n));
    if (n == 0) m(0, 0) = 1;
    if (n == tdeg) {
      Vector col = model.projection.apply(V.generator(r.generator_index));
      for (std::size_t i = 0; i < col.size(); ++i) m(i, 0) = col[i];
    }
    inc.push_back(std::move(m));
  }
  std::vector<Matrix> proj;
  const int top = *A.top_degree();
  for (int n = 0; n <= std::max(top, tdeg); ++n) {
    Matrix m(ext->dimension(n), A.dimension(n));
    if (n == 0) m(0, 0) = 1;
    if (n == tdeg) {
      const Monomial t = generator_monomial(V.generators(), r.generator_index);
      for (std::size_t j = 0; j < A.dimension(n); ++j) {
        const std::size_t mono = (n == model.top_degree) ? model.kept_in_top_degree[j] : j;
        if (V.basis(n)[mono] == t) m(0, j) = 1;
      }
    }
    proj.push_back(std::move(m));
  }
  auto i2 = CdgaMorphism::from_matrices(ext, model.quotient, std::move(inc));
  auto q2 = CdgaMorphism::from_matrices(model.quotient, ext, std::move(proj));
  const int bound = std::max(top, tdeg) + 1;
  verify_morphism(i2, bound);
  verify_morphism(q2, bound);
  for (int n : {0, tdeg}) {
    if (q2.matrix(n) * i2.matrix(n) != Matrix::identity(1))
      throw InvariantViolation("pushed retract does not satisfy q∘i = id");
  }
  return FiniteRetract{ext, i2, q2};
}

std::vector<std::size_t> free_algebra_dimensions(const std::vector<std::size_t>& generators,
                                                 int max_degree) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(max_degree + 1), 0);
  dims[0] = 1;
  for (std::size_t n = 1; n < generators.size() && static_cast<int>(n) <= max_degree; ++n) {
    for (std::size_t c = 0; c < generators[n]; ++c) {
      if (n % 2 == 0) {
        for (std::size_t k = n; k < dims.size(); ++k) dims[k] += dims[k - n];
      } else {
        for (std::size_t k = dims.size(); k-- > n;) dims[k] += dims[k - n];
      }
    }
  }
  return dims;
}

FreenessVerdict is_free_graded_commutative(const FiniteCdga& h, int max_degree) {
  if (!h.has_zero_differential())
    throw Error("freeness test needs an algebra with zero differential");
  FreenessVerdict v;
  const int stored_top = h.basis().top_degree();
  const int bound = h.complete() ? max_degree : std::min(max_degree, stored_top);
  v.bound = bound;
  v.indecomposables.assign(static_cast<std::size_t>(bound + 1), 0);
  for (int n = 0; n <= bound; ++n) v.algebra_dimensions.push_back(h.dimension(n));
  for (int n = 1; n <= bound; ++n) {
    EchelonBasis dec(h.dimension(n));
    for (int p = 1; p < n; ++p) {
      for (std::size_t i = 0; i < h.dimension(p); ++i)
        for (std::size_t j = 0; j < h.dimension(n - p); ++j) dec.insert(h.basis_product(p, i, n - p, j));
    }
    v.indecomposables[static_cast<std::size_t>(n)] = h.dimension(n) - dec.dimension();
  }
  v.free_dimensions = free_algebra_dimensions(v.indecomposables, bound);
  for (int n = 0; n <= bound; ++n) {
    if (v.free_dimensions[static_cast<std::size_t>(n)] != v.algebra_dimensions[static_cast<std::size_t>(n)]) {
      v.status = FreenessStatus::NotFree;
      v.failing_degree = n;
      return v;
    }
  }
  v.status = FreenessStatus::FreeUpToBound;
  if (h.complete()) {
    bool all_odd = true;
    int free_top = 0;
    for (int n = 1; n <= bound; ++n) {
      const auto q = v.indecomposables[static_cast<std::size_t>(n)];
      if (q == 0) continue;
      if (n % 2 == 0) all_odd = false;
      free_top += n * static_cast<int>(q);
    }
    const int top = h.top_degree().value_or(0);
    if (all_odd && bound >= std::max(top, free_top)) v.status = FreenessStatus::Free;
  }
  return v;
}

std::string to_string(FreenessStatus s) {
  switch (s) {
    case FreenessStatus::Free: return "FREE";
    case FreenessStatus::NotFree: return "NOT_FREE";
    case FreenessStatus::FreeUpToBound: return "FREE_UP_TO_BOUND";
  }
  return "?";
}

}  // namespace rht
