#include "rht/dgl.hpp"

#include "rht/errors.hpp"

namespace rht {

std::string DglView::format(int n, const Vector& v) const {
  std::string s;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Rational a = abs(v[i]);
    if (first)
      s += sgn(v[i]) < 0 ? "-" : "";
    else
      s += sgn(v[i]) < 0 ? " - " : " + ";
    first = false;
    if (a != 1) s += to_string(a) + "*";
    s += basis_label(n, i);
  }
  return first ? "0" : s;
}

AbelianDgl::AbelianDgl(GradedBasis basis, std::vector<Matrix> boundary)
    : basis_(std::move(basis)), boundary_(std::move(boundary)) {
  for (std::size_t n = 0; n < boundary_.size(); ++n) {
    const Matrix& m = boundary_[n];
    if (m.rows() == 0 && m.cols() == 0) continue;
    if (m.cols() != basis_.dimension(static_cast<int>(n)) ||
        m.rows() != basis_.dimension(static_cast<int>(n) - 1))
      throw Error("boundary matrix in degree " + std::to_string(n) + " has the wrong shape");
  }
}

Matrix AbelianDgl::boundary_matrix(int n) const {
  if (n >= 0 && n < static_cast<int>(boundary_.size()) &&
      (boundary_[n].rows() || boundary_[n].cols()))
    return boundary_[n];
  return Matrix(dimension(n - 1), dimension(n));
}

Vector AbelianDgl::bracket(int p, const Vector&, int q, const Vector&) const {
  return zero_vector(dimension(p + q));
}

HomologyInDegree homology(const DglView& l, int n) {
  HomologyInDegree out;
  out.degree = n;
  const std::size_t dim = l.dimension(n);
  if (dim == 0) return out;
  EchelonBasis span(dim);
  Matrix above = l.boundary_matrix(n + 1);
  for (std::size_t c = 0; c < above.cols(); ++c) span.insert(above.column(c));
  for (const auto& k : kernel_basis(l.boundary_matrix(n))) {
    Vector r = span.reduce(k);
    if (is_zero(r)) continue;
    span.insert(r);
    out.representatives.push_back(std::move(r));
  }
  out.dimension = out.representatives.size();
  return out;
}

namespace {

Rational sign(long long e) { return Rational(sign_of_parity(e)); }

std::string describe(const DglView& l, int n, std::size_t i) {
  return l.basis_label(n, i) + " (degree " + std::to_string(n) + ")";
}

}  // namespace

StructureReport validate_dgl(const DglView& l, int bound) {
  StructureReport r;
  r.bound = bound;
  auto fail = [&r](std::string s) {
    if (r.failures.size() < 20) r.failures.push_back(std::move(s));
  };
  std::vector<Matrix> d(bound + 2);
  for (int n = 1; n <= bound + 1; ++n) d[n] = l.boundary_matrix(n);

  for (int n = 2; n <= bound; ++n) {
    for (std::size_t i = 0; i < l.dimension(n); ++i) {
      ++r.d_squared;
      Vector e = unit_vector(l.dimension(n), i);
      if (!is_zero(d[n - 1].apply(d[n].apply(e))))
        fail("d^2 != 0 on " + describe(l, n, i));
    }
  }
  auto D = [&](int n, const Vector& x) {
    return n >= 2 ? d[n].apply(x) : zero_vector(l.dimension(n - 1));
  };

  for (int p = 1; p <= bound; ++p) {
    for (int q = 1; p + q <= bound; ++q) {
      for (std::size_t i = 0; i < l.dimension(p); ++i) {
        Vector x = unit_vector(l.dimension(p), i);
        for (std::size_t j = 0; j < l.dimension(q); ++j) {
          Vector y = unit_vector(l.dimension(q), j);
          Vector xy = l.bracket(p, x, q, y);
          ++r.antisymmetry;
          Vector yx = l.bracket(q, y, p, x);
          if (!is_zero(add(xy, scaled(yx, sign(p * q)))))
            fail("antisymmetry fails on " + describe(l, p, i) + ", " + describe(l, q, j));
          ++r.derivation;
          Vector lhs = D(p + q, xy);
          Vector rhs = zero_vector(l.dimension(p + q - 1));
          if (p >= 2) rhs = l.bracket(p - 1, D(p, x), q, y);
          if (q >= 2) axpy(rhs, sign(p), l.bracket(p, x, q - 1, D(q, y)));
          if (lhs != rhs)
            fail("d is not a derivation on " + describe(l, p, i) + ", " + describe(l, q, j));
        }
      }
    }
  }

  for (int p = 1; p <= bound; ++p) {
    for (int q = 1; p + q <= bound; ++q) {
      for (int s = 1; p + q + s <= bound; ++s) {
        for (std::size_t i = 0; i < l.dimension(p); ++i) {
          Vector x = unit_vector(l.dimension(p), i);
          for (std::size_t j = 0; j < l.dimension(q); ++j) {
            Vector y = unit_vector(l.dimension(q), j);
            Vector xy = l.bracket(p, x, q, y);
            for (std::size_t k = 0; k < l.dimension(s); ++k) {
              Vector z = unit_vector(l.dimension(s), k);
              ++r.jacobi;
              Vector lhs = l.bracket(p, x, q + s, l.bracket(q, y, s, z));
              Vector rhs = l.bracket(p + q, xy, s, z);
              axpy(rhs, sign(p * q), l.bracket(q, y, p + s, l.bracket(p, x, s, z)));
              if (lhs != rhs)
                fail("Jacobi fails on " + describe(l, p, i) + ", " + describe(l, q, j) + ", " +
                     describe(l, s, k));
            }
          }
        }
      }
    }
  }
  return r;
}

DglMorphism::DglMorphism(DglPtr source, DglPtr target, std::map<int, Matrix> per_degree)
    : source_(std::move(source)), target_(std::move(target)), per_degree_(std::move(per_degree)) {
  for (const auto& [n, m] : per_degree_) {
    if (m.rows() != target_->dimension(n) || m.cols() != source_->dimension(n))
      throw Error("morphism matrix in degree " + std::to_string(n) + " has the wrong shape");
  }
}

const Matrix& DglMorphism::matrix(int n) const {
  auto it = per_degree_.find(n);
  if (it == per_degree_.end())
    throw InvariantViolation("morphism not stored in degree " + std::to_string(n));
  return it->second;
}

void DglMorphism::verify() const {
  const int b = bound();
  for (int n = 2; n <= b; ++n) {
    if (!per_degree_.count(n) || !per_degree_.count(n - 1)) continue;
    if (matrix(n - 1) * source_->boundary_matrix(n) != target_->boundary_matrix(n) * matrix(n))
      throw NotAMorphism("does not commute with d in degree " + std::to_string(n));
  }
  for (int p = 1; p <= b; ++p) {
    for (int q = 1; p + q <= b; ++q) {
      if (!per_degree_.count(p) || !per_degree_.count(q) || !per_degree_.count(p + q)) continue;
      for (std::size_t i = 0; i < source_->dimension(p); ++i) {
        Vector x = unit_vector(source_->dimension(p), i);
        Vector fx = apply(p, x);
        for (std::size_t j = 0; j < source_->dimension(q); ++j) {
          Vector y = unit_vector(source_->dimension(q), j);
          Vector lhs = apply(p + q, source_->bracket(p, x, q, y));
          Vector rhs = target_->bracket(p, fx, q, apply(q, y));
          if (lhs != rhs)
            throw NotAMorphism("bracket not preserved on " + source_->basis_label(p, i) + ", " +
                               source_->basis_label(q, j));
        }
      }
    }
  }
}

DglMorphism compose(const DglMorphism& g, const DglMorphism& f) {
  if (f.target() != g.source()) throw Error("composing morphisms with mismatched ends");
  std::map<int, Matrix> m;
  const int b = std::min(f.bound(), g.bound());
  for (int n = 1; n <= b; ++n) m.emplace(n, g.matrix(n) * f.matrix(n));
  return DglMorphism(f.source(), g.target(), std::move(m));
}

bool is_identity(const DglMorphism& f) {
  for (int n = 1; n <= f.bound(); ++n) {
    if (f.matrix(n) != Matrix::identity(f.source()->dimension(n))) return false;
  }
  return true;
}

}  // namespace rht
