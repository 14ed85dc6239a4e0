#include "rht/morphism.hpp"

#include "rht/errors.hpp"

namespace rht {

CdgaMorphism CdgaMorphism::from_generator_images(SullivanPtr source, AlgebraPtr target,
                                                 std::vector<Vector> images) {
  if (images.size() != source->num_generators())
    throw Error("morphism needs one image per generator");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int deg = source->generators().degree(i);
    if (images[i].size() != target->dimension(deg))
      throw DegreeMismatch("image of generator " + source->generators()[i].name +
                           " has the wrong dimension");
  }
  CdgaMorphism f;
  f.source_ = source;
  f.target_ = std::move(target);
  f.sullivan_ = std::move(source);
  f.images_ = std::move(images);
  f.cache_ = std::make_shared<Cache>();
  return f;
}

CdgaMorphism CdgaMorphism::from_matrices(AlgebraPtr source, AlgebraPtr target,
                                         std::vector<Matrix> per_degree) {
  for (std::size_t n = 0; n < per_degree.size(); ++n) {
    const int deg = static_cast<int>(n);
    if (per_degree[n].rows() != target->dimension(deg) ||
        per_degree[n].cols() != source->dimension(deg))
      throw DegreeMismatch("morphism matrix in degree " + std::to_string(n) +
                           " has the wrong shape");
  }
  CdgaMorphism f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.fixed_ = std::move(per_degree);
  f.cache_ = std::make_shared<Cache>();
  return f;
}

CdgaMorphism CdgaMorphism::identity(SullivanPtr algebra) {
  std::vector<Vector> images;
  for (std::size_t i = 0; i < algebra->num_generators(); ++i) {
    const int deg = algebra->generators().degree(i);
    images.push_back(algebra->to_vector(deg, algebra->generator(i)));
  }
  AlgebraPtr target = algebra;
  return from_generator_images(std::move(algebra), std::move(target), std::move(images));
}

Vector CdgaMorphism::evaluate_monomial(const Monomial& m) const {
  Vector acc = target_->unit();
  int deg = 0;
  for (const auto& f : m.factors) {
    const int gd = sullivan_->generators().degree(f.gen);
    for (int k = 0; k < f.exponent; ++k) {
      acc = target_->multiply(deg, acc, gd, images_[f.gen]);
      deg += gd;
    }
  }
  return acc;
}

Matrix CdgaMorphism::matrix(int n) const {
  if (!sullivan_) {
    if (n >= 0 && n < static_cast<int>(fixed_.size())) return fixed_[static_cast<std::size_t>(n)];
    if (source_->dimension(n) != 0)
      throw InvariantViolation("morphism matrix requested beyond its stored degrees");
    return Matrix(target_->dimension(n), 0);
  }
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->matrices.find(n);
    if (it != cache_->matrices.end()) return it->second;
  }
  const auto& basis = sullivan_->basis(n);
  Matrix m(target_->dimension(n), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Vector col = evaluate_monomial(basis[j]);
    for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
  }
  std::lock_guard lock(cache_->mutex);
  cache_->matrices.emplace(n, m);
  return m;
}

Vector CdgaMorphism::apply(const Element& e) const {
  if (!sullivan_) throw Error("element evaluation needs a Sullivan source");
  if (e.is_zero()) throw Error("cannot infer the degree of the zero element");
  auto deg = e.homogeneous_degree();
  if (!deg) throw NonHomogeneousInput("element is not homogeneous");
  Vector out(target_->dimension(*deg), Rational(0));
  for (const auto& [m, c] : e.terms()) axpy(out, c, evaluate_monomial(m));
  return out;
}

CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f, int max_degree) {
  if (f.sullivan_source()) {
    // keep the generator description so the composite stays valid in every degree
    std::vector<Vector> images;
    const auto& src = *f.sullivan_source();
    for (std::size_t i = 0; i < src.num_generators(); ++i) {
      const int deg = src.generators().degree(i);
      images.push_back(g.apply(deg, f.generator_images()[i]));
    }
    return CdgaMorphism::from_generator_images(f.sullivan_source(), g.target(), std::move(images));
  }
  std::vector<Matrix> mats;
  for (int n = 0; n <= max_degree; ++n) mats.push_back(g.matrix(n) * f.matrix(n));
  return CdgaMorphism::from_matrices(f.source(), g.target(), std::move(mats));
}

bool MorphismReport::quasi_isomorphism_up_to_bound() const {
  for (const auto& d : cohomology) {
    if (!d.is_isomorphism()) return false;
  }
  return true;
}

InducedMapDegree induced_map(const CdgaMorphism& f, const CohomologyTable& source,
                             const CohomologyTable& target, int n) {
  InducedMapDegree out;
  out.degree = n;
  out.source_dimension = source.dimension(n);
  out.target_dimension = target.dimension(n);
  out.matrix = Matrix(out.target_dimension, out.source_dimension);
  const auto& reps = source.representatives(n);
  for (std::size_t j = 0; j < reps.size(); ++j) {
    Vector c = target.class_of(n, f.apply(n, reps[j]));
    for (std::size_t i = 0; i < c.size(); ++i) out.matrix(i, j) = c[i];
  }
  out.rank = rank(out.matrix);
  return out;
}

void verify_morphism(const CdgaMorphism& f, int max_degree) {
  const auto& S = *f.source();
  const auto& T = *f.target();
  if (f.matrix(0).apply(S.unit()) != T.unit()) throw NotAMorphism("unit is not preserved");
  if (f.sullivan_source()) {
    const auto& src = *f.sullivan_source();
    for (std::size_t i = 0; i < src.num_generators(); ++i) {
      const int deg = src.generators().degree(i);
      if (deg > max_degree) continue;
      Vector lhs = src.differential_of(i).is_zero() ? Vector(T.dimension(deg + 1), Rational(0))
                                                    : f.apply(src.differential_of(i));
      Vector rhs = T.differential(deg, f.generator_images()[i]);
      if (lhs != rhs) {
        throw NotAMorphism("f(d " + src.generators()[i].name + ") = " + T.format(deg + 1, lhs) +
                           " but d f(" + src.generators()[i].name + ") = " +
                           T.format(deg + 1, rhs));
      }
    }
  } else {
    for (int n = 0; n <= max_degree; ++n) {
      Matrix lhs = f.matrix(n + 1) * S.differential_matrix(n);
      Matrix rhs = T.differential_matrix(n) * f.matrix(n);
      if (lhs != rhs)
        throw NotAMorphism("f does not commute with d in degree " + std::to_string(n));
    }
    for (int p = 1; p <= max_degree; ++p) {
      for (int q = p; p + q <= max_degree; ++q) {
        for (std::size_t i = 0; i < S.dimension(p); ++i) {
          for (std::size_t j = 0; j < S.dimension(q); ++j) {
            Vector a = unit_vector(S.dimension(p), i), b = unit_vector(S.dimension(q), j);
            Vector lhs = f.apply(p + q, S.multiply(p, a, q, b));
            Vector rhs = T.multiply(p, f.apply(p, a), q, f.apply(q, b));
            if (lhs != rhs)
              throw NotAMorphism("f is not multiplicative on " + S.basis_label(p, i) + " * " +
                                 S.basis_label(q, j));
          }
        }
      }
    }
  }
}

MorphismReport check_morphism(const CdgaMorphism& f, int max_degree) {
  verify_morphism(f, max_degree);
  CohomologyTable hs(f.source(), max_degree), ht(f.target(), max_degree);
  MorphismReport report;
  for (int n = 0; n <= max_degree; ++n) report.cohomology.push_back(induced_map(f, hs, ht, n));
  return report;
}

}  // namespace rht
