#include "rht/tensor_model.hpp"

#include "rht/errors.hpp"

namespace rht {

TensorLieModel::TensorLieModel(AlgebraPtr a, FreeDglPtr l)
    : a_(std::move(a)), l_(std::move(l)), cache_(std::make_shared<Cache>()) {
  auto top = a_->top_degree();
  if (!top) throw Error("A⊗L needs a finite-dimensional algebra A");
  top_ = *top;
  if (a_->dimension(0) != 1) throw Error("A⊗L needs a connected algebra A");
  const auto& gens = l_->generators();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens.degree(g) <= top_) {
      throw ConnectivityViolation("A has a nonzero class in degree " + std::to_string(top_) +
                                  " and L has the generator " + gens[g].name + " of degree " +
                                  std::to_string(gens.degree(g)) + ", so A⊗L has elements of degree " +
                                  std::to_string(gens.degree(g) - top_) + " <= 0");
    }
  }
}

TensorLieModel::Degree& TensorLieModel::degree_data(int n) const {
  auto it = cache_->degrees.find(n);
  if (it != cache_->degrees.end()) return it->second;
  Degree deg;
  if (n >= 1) {
    for (int p = 0; p <= top_; ++p) {
      const std::size_t la = l_->dimension(n + p);
      for (std::size_t i = 0; i < a_->dimension(p); ++i) {
        deg.block_start.emplace(std::make_pair(p, i), deg.basis.size());
        for (std::size_t j = 0; j < la; ++j) deg.basis.push_back({p, i, j});
      }
    }
  }
  return cache_->degrees.emplace(n, std::move(deg)).first->second;
}

const std::vector<TensorLieModel::BasisElement>& TensorLieModel::basis(int n) const {
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).basis;
}

std::size_t TensorLieModel::index_of(int n, int a_degree, std::size_t a_index,
                                     std::size_t l_index) const {
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).block_start.at({a_degree, a_index}) + l_index;
}

std::size_t TensorLieModel::dimension(int n) const { return n < 1 ? 0 : basis(n).size(); }

TensorLieModel::Blocks TensorLieModel::decode(int n, const Vector& v) const {
  const auto& b = basis(n);
  std::map<std::pair<int, std::size_t>, Vector> coords;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    auto key = std::make_pair(b[k].a_degree, b[k].a_index);
    auto& c = coords[key];
    if (c.empty()) c = zero_vector(l_->dimension(n + b[k].a_degree));
    c[b[k].l_index] = v[k];
  }
  Blocks out;
  for (const auto& [key, c] : coords) out.emplace(key, l_->from_coordinates(n + key.first, c));
  return out;
}

Vector TensorLieModel::encode(int n, const Blocks& blocks) const {
  Vector v = zero_vector(dimension(n));
  for (const auto& [key, x] : blocks) {
    if (x.is_zero()) continue;
    Vector c = l_->coordinates(n + key.first, x);
    const std::size_t start = index_of(n, key.first, key.second, 0);
    for (std::size_t j = 0; j < c.size(); ++j) v[start + j] = c[j];
  }
  return v;
}

namespace {

void accumulate(TensorLieModel::Blocks& blocks, int p, std::size_t i, const LieElement& x) {
  if (x.is_zero()) return;
  auto [it, inserted] = blocks.try_emplace({p, i}, x);
  if (!inserted) it->second += x;
}

}  // namespace

Matrix TensorLieModel::boundary_matrix(int n) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (n >= 1 && degree_data(n).boundary) return *degree_data(n).boundary;
  }
  Matrix m(dimension(n - 1), dimension(n));
  if (n >= 2) {
    const auto b = basis(n);
    for (std::size_t k = 0; k < b.size(); ++k) {
      const auto& e = b[k];
      const LieElement l = l_->basis(n + e.a_degree)[e.l_index];
      Blocks out;
      if (e.a_degree < top_) {
        Vector da = a_->differential(e.a_degree, unit_vector(a_->dimension(e.a_degree), e.a_index));
        for (std::size_t i = 0; i < da.size(); ++i) {
          if (sgn(da[i]) != 0) accumulate(out, e.a_degree + 1, i, da[i] * l);
        }
      }
      LieElement dl = l_->boundary(l);
      accumulate(out, e.a_degree, e.a_index, Rational(sign_of_parity(e.a_degree)) * dl);
      Vector col = encode(n - 1, out);
      for (std::size_t r = 0; r < col.size(); ++r) m(r, k) = col[r];
    }
  }
  if (n >= 1) {
    std::lock_guard lock(cache_->mutex);
    degree_data(n).boundary = m;
  }
  return m;
}

Vector TensorLieModel::bracket(int p, const Vector& x, int q, const Vector& y) const {
  Blocks bx = decode(p, x);
  Blocks by = decode(q, y);
  Blocks out;
  for (const auto& [kx, lx] : bx) {
    const auto [s, i] = kx;
    for (const auto& [ky, ly] : by) {
      const auto [t, j] = ky;
      if (s + t > top_) continue;
      Vector prod = a_->multiply(s, unit_vector(a_->dimension(s), i), t,
                                 unit_vector(a_->dimension(t), j));
      if (is_zero(prod)) continue;
      // |a'||l| with |l| = p + s
      LieElement lb = rht::bracket(lx, ly);
      if ((static_cast<long long>(t) * (p + s)) % 2 != 0) lb = -lb;
      for (std::size_t k = 0; k < prod.size(); ++k) {
        if (sgn(prod[k]) != 0) accumulate(out, s + t, k, prod[k] * lb);
      }
    }
  }
  return encode(p + q, out);
}

std::string TensorLieModel::basis_label(int n, std::size_t i) const {
  const auto e = basis(n).at(i);
  return a_->basis_label(e.a_degree, e.a_index) + "⊗" +
         l_->basis_label(n + e.a_degree, e.l_index);
}

TensorLieModelPtr mapping_space_lie_model(AlgebraPtr a, FreeDglPtr l, int validation_bound,
                                          StructureReport* report) {
  auto m = std::make_shared<const TensorLieModel>(std::move(a), std::move(l));
  StructureReport r = validate_dgl(*m, validation_bound);
  if (!r.ok()) throw InvariantViolation("A⊗L fails the DGL axioms: " + r.failures.front());
  if (report) *report = std::move(r);
  return m;
}

EvaluationMaps evaluation_maps(const TensorLieModelPtr& m, int bound) {
  const FreeDglPtr& l = m->lie();
  std::map<int, Matrix> proj, sect;
  for (int n = 1; n <= bound; ++n) {
    const auto& b = m->basis(n);
    const std::size_t dl = l->dimension(n);
    Matrix pm(dl, b.size());
    Matrix sm(b.size(), dl);
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b[k].a_degree == 0) pm(b[k].l_index, k) = 1;
    }
    for (std::size_t j = 0; j < dl; ++j) sm(m->index_of(n, 0, 0, j), j) = 1;
    proj.emplace(n, std::move(pm));
    sect.emplace(n, std::move(sm));
  }
  EvaluationMaps out{DglMorphism(m, l, std::move(proj)), DglMorphism(l, m, std::move(sect))};
  out.projection.verify();
  out.section.verify();
  if (!is_identity(compose(out.projection, out.section)))
    throw InvariantViolation("projection after section is not the identity");
  return out;
}

namespace {

/// f⊗id between two tensor models sharing L, for f: A -> A' given degreewise.
DglMorphism tensor_with_identity(const TensorLieModelPtr& from, const TensorLieModelPtr& to,
                                 const CdgaMorphism& f, int bound) {
  std::map<int, Matrix> mats;
  std::map<int, Matrix> fa;
  for (int p = 0; p <= from->top_degree(); ++p) fa.emplace(p, f.matrix(p));
  for (int n = 1; n <= bound; ++n) {
    const auto& b = from->basis(n);
    Matrix m(to->dimension(n), b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
      const auto& e = b[k];
      const Matrix& fp = fa.at(e.a_degree);
      for (std::size_t r = 0; r < fp.rows(); ++r) {
        if (sgn(fp(r, e.a_index)) != 0) m(to->index_of(n, e.a_degree, r, e.l_index), k) = fp(r, e.a_index);
      }
    }
    mats.emplace(n, std::move(m));
  }
  return DglMorphism(from, to, std::move(mats));
}

}  // namespace

TensorRetract tensor_retract(const TensorLieModelPtr& m, const CdgaMorphism& i,
                             const CdgaMorphism& q, int bound) {
  if (i.target() != m->cdga() || q.source() != m->cdga())
    throw Error("retract maps do not match the algebra of the model");
  if (q.target() != i.source()) throw NotARetract("q does not land in the source of i");
  const AlgebraPtr& e = i.source();
  auto top = e->top_degree();
  if (!top) throw Error("retract source must be finite-dimensional");
  for (int n = 0; n <= *top; ++n) {
    if (q.matrix(n) * i.matrix(n) != Matrix::identity(e->dimension(n)))
      throw NotARetract("q∘i is not the identity in degree " + std::to_string(n));
  }
  auto small = std::make_shared<const TensorLieModel>(e, m->lie());
  TensorRetract out{small, tensor_with_identity(small, m, i, bound),
                    tensor_with_identity(m, small, q, bound)};
  out.inclusion.verify();
  out.projection.verify();
  if (!is_identity(compose(out.projection, out.inclusion)))
    throw InvariantViolation("Q∘I is not the identity");
  return out;
}

}  // namespace rht
