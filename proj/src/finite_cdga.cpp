#include "rht/finite_cdga.hpp"

#include "rht/errors.hpp"

namespace rht {

FiniteCdga::FiniteCdga(GradedBasis basis, std::vector<Matrix> differential,
                       const ProductFn& product, Options options)
    : basis_(std::move(basis)), d_(std::move(differential)), complete_(options.complete) {
  const int top = basis_.top_degree();
  if (top < 0 || basis_.dimension(0) != 1)
    throw Error("finite CDGA must be connected (one basis element in degree 0)");
  d_.resize(static_cast<std::size_t>(top + 1));
  for (int n = 0; n <= top; ++n) {
    auto& m = d_[static_cast<std::size_t>(n)];
    const std::size_t rows = dimension(n + 1), cols = dimension(n);
    if (m.rows() == 0 && m.cols() == 0) m = Matrix(rows, cols);
    if (m.rows() != rows || m.cols() != cols)
      throw DegreeMismatch("differential matrix in degree " + std::to_string(n) +
                           " has the wrong shape");
  }
  table_.resize(static_cast<std::size_t>(top + 1));
  for (int p = 0; p <= top; ++p) {
    auto& row = table_[static_cast<std::size_t>(p)];
    row.resize(static_cast<std::size_t>(top - p + 1));
    for (int q = 0; p + q <= top; ++q) {
      auto& cell = row[static_cast<std::size_t>(q)];
      cell.reserve(dimension(p) * dimension(q));
      for (std::size_t i = 0; i < dimension(p); ++i) {
        for (std::size_t j = 0; j < dimension(q); ++j) {
          Vector v = product(p, i, q, j);
          if (v.size() != dimension(p + q))
            throw DegreeMismatch("product table entry has the wrong length");
          cell.push_back(std::move(v));
        }
      }
    }
  }
  if (options.validate) validate();
}

FiniteCdga FiniteCdga::with_zero_differential(GradedBasis basis, const ProductFn& product,
                                              Options options) {
  return FiniteCdga(std::move(basis), {}, product, options);
}

bool FiniteCdga::has_zero_differential() const {
  for (const auto& m : d_) {
    if (!m.is_zero()) return false;
  }
  return true;
}

Vector FiniteCdga::basis_product(int p, std::size_t i, int q, std::size_t j) const {
  const int top = basis_.top_degree();
  if (p < 0 || q < 0 || p + q > top) return Vector(dimension(p + q), Rational(0));
  return table_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)][i * dimension(q) + j];
}

Matrix FiniteCdga::differential_matrix(int n) const {
  if (n < 0 || n > basis_.top_degree()) return Matrix(dimension(n + 1), dimension(n));
  return d_[static_cast<std::size_t>(n)];
}

Vector FiniteCdga::multiply(int p, const Vector& a, int q, const Vector& b) const {
  Vector out(dimension(p + q), Rational(0));
  if (out.empty()) return out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      axpy(out, a[i] * b[j], basis_product(p, i, q, j));
    }
  }
  return out;
}

std::string FiniteCdga::basis_label(int n, std::size_t i) const {
  return basis_.labels.at(static_cast<std::size_t>(n)).at(i);
}

std::optional<int> FiniteCdga::top_degree() const {
  int top = basis_.top_degree();
  while (top > 0 && dimension(top) == 0) --top;
  return top;
}

void FiniteCdga::validate() const {
  const int top = basis_.top_degree();
  auto e = [&](int n, std::size_t i) { return unit_vector(dimension(n), i); };
  for (int q = 0; q <= top; ++q) {
    for (std::size_t j = 0; j < dimension(q); ++j) {
      if (basis_product(0, 0, q, j) != e(q, j))
        throw Error("basis element 0 of degree 0 is not a unit");
    }
  }
  for (int p = 0; p <= top; ++p) {
    for (int q = 0; p + q <= top; ++q) {
      const int sign = sign_of_parity(static_cast<long long>(p) * q);
      for (std::size_t i = 0; i < dimension(p); ++i) {
        for (std::size_t j = 0; j < dimension(q); ++j) {
          Vector ab = basis_product(p, i, q, j);
          Vector ba = basis_product(q, j, p, i);
          if (ab != scaled(ba, sign))
            throw Error("multiplication is not graded commutative on " + basis_label(p, i) +
                        ", " + basis_label(q, j));
          // Leibniz: d(ab) = d(a) b + (-1)^p a d(b)
          Vector lhs = differential(p + q, ab);
          Vector rhs = multiply(p + 1, differential(p, e(p, i)), q, e(q, j));
          axpy(rhs, Rational(sign_of_parity(p)), multiply(p, e(p, i), q + 1, differential(q, e(q, j))));
          if (lhs != rhs)
            throw Error("differential violates the Leibniz rule on " + basis_label(p, i) + ", " +
                        basis_label(q, j));
          for (int r = 0; p + q + r <= top; ++r) {
            for (std::size_t k = 0; k < dimension(r); ++k) {
              Vector left = multiply(p + q, ab, r, e(r, k));
              Vector right = multiply(p, e(p, i), q + r, basis_product(q, j, r, k));
              if (left != right) throw Error("multiplication is not associative");
            }
          }
        }
      }
    }
  }
  for (int n = 0; n + 1 <= top; ++n) {
    if (!(differential_matrix(n + 1) * differential_matrix(n)).is_zero())
      throw DifferentialNotSquareZero("d^2 != 0 in degree " + std::to_string(n));
  }
}

namespace {

struct QuotientDegree {
  std::vector<std::size_t> kept;            // surviving monomial indices
  std::vector<Vector> ideal_rows;           // reduced echelon rows of the ideal
  std::vector<std::size_t> ideal_pivots;
};

// Span of {monomial * relation} in degree n.
EchelonBasis ideal_in_degree(const SullivanAlgebra& free, const std::vector<Element>& relations,
                             int n) {
  EchelonBasis span(free.dimension(n));
  for (const auto& r : relations) {
    auto deg = r.homogeneous_degree();
    if (!deg) continue;
    if (*deg > n) continue;
    for (const auto& m : free.basis(n - *deg)) {
      span.insert(free.to_vector(n, free.multiply(Element::monomial(m), r)));
    }
  }
  return span;
}

}  // namespace

FiniteCdga quotient_algebra(const SullivanAlgebra& free, const std::vector<Element>& relations,
                            int truncate, bool validate) {
  if (truncate < 0) throw Error("truncation degree must be non-negative");
  for (const auto& r : relations) {
    if (r.is_zero()) continue;
    if (!r.homogeneous_degree())
      throw NonHomogeneousInput("relation " + free.format(r) + " is not homogeneous");
    if (*r.homogeneous_degree() == 0) throw Error("relation is a nonzero constant");
  }
  std::vector<EchelonBasis> ideals;
  for (int n = 0; n <= truncate; ++n) ideals.push_back(ideal_in_degree(free, relations, n));

  // d(relation) must stay inside the ideal.
  for (const auto& r : relations) {
    auto deg = r.homogeneous_degree();
    if (!deg || *deg + 1 > truncate) continue;
    Vector dr = free.to_vector(*deg + 1, free.d(r));
    if (!ideals[static_cast<std::size_t>(*deg + 1)].contains(dr))
      throw Error("relations do not generate a differential ideal: d(" + free.format(r) +
                  ") is not in the ideal");
  }

  GradedBasis basis;
  std::vector<std::vector<std::size_t>> kept(static_cast<std::size_t>(truncate + 1));
  for (int n = 0; n <= truncate; ++n) {
    const auto& ideal = ideals[static_cast<std::size_t>(n)];
    std::vector<bool> pivot(free.dimension(n), false);
    for (const auto& row : ideal.rows()) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (sgn(row[c]) != 0) {
          pivot[c] = true;
          break;
        }
      }
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < pivot.size(); ++i) {
      if (pivot[i]) continue;
      kept[static_cast<std::size_t>(n)].push_back(i);
      labels.push_back(free.basis_label(n, i));
    }
    basis.labels.push_back(std::move(labels));
  }
  while (basis.labels.size() > 1 && basis.labels.back().empty()) {
    basis.labels.pop_back();
    kept.pop_back();
  }
  const int top = basis.top_degree();

  auto project = [&](int n, const Vector& v) {
    Vector r = ideals[static_cast<std::size_t>(n)].reduce(v);
    const auto& k = kept[static_cast<std::size_t>(n)];
    Vector out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = r[k[i]];
    return out;
  };
  auto lift = [&](int n, std::size_t i) {
    return Element::monomial(free.basis(n)[kept[static_cast<std::size_t>(n)][i]]);
  };

  std::vector<Matrix> d;
  for (int n = 0; n <= top; ++n) {
    Matrix m(basis.dimension(n + 1), basis.dimension(n));
    if (n + 1 <= top) {
      for (std::size_t j = 0; j < basis.dimension(n); ++j) {
        Vector col = project(n + 1, free.to_vector(n + 1, free.d(lift(n, j))));
        for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
      }
    }
    d.push_back(std::move(m));
  }

  // Complete when the untruncated ideal swallows a full window of degrees
  // above the truncation.
  bool complete = true;
  const int window = std::max(1, free.generators().max_degree());
  for (int n = truncate + 1; n <= truncate + window && complete; ++n) {
    if (ideal_in_degree(free, relations, n).dimension() != free.dimension(n)) complete = false;
  }

  FiniteCdga::Options opts;
  opts.validate = validate;
  opts.complete = complete;
  return FiniteCdga(
      basis, std::move(d),
      [&](int p, std::size_t i, int q, std::size_t j) {
        Element prod = free.multiply(lift(p, i), lift(q, j));
        return project(p + q, free.to_vector(p + q, prod));
      },
      opts);
}

Vector quotient_coordinates(const SullivanAlgebra& free, const std::vector<Element>& relations,
                            int n, const Element& e) {
  auto ideal = ideal_in_degree(free, relations, n);
  std::vector<bool> pivot(free.dimension(n), false);
  for (const auto& row : ideal.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (sgn(row[c]) != 0) {
        pivot[c] = true;
        break;
      }
    }
  }
  Vector r = ideal.reduce(free.to_vector(n, e));
  Vector out;
  for (std::size_t i = 0; i < pivot.size(); ++i) {
    if (!pivot[i]) out.push_back(r[i]);
  }
  return out;
}

FiniteCdga exterior_on_odd_generator(const std::string& name, int degree) {
  if (degree % 2 == 0) throw Error("exterior generator must have odd degree");
  GradedBasis basis;
  basis.labels.resize(static_cast<std::size_t>(degree + 1));
  basis.labels[0] = {"1"};
  basis.labels[static_cast<std::size_t>(degree)] = {name};
  return FiniteCdga::with_zero_differential(
      basis,
      [degree](int p, std::size_t, int q, std::size_t) {
        const int n = p + q;
        Vector v((n == 0 || n == degree) ? 1 : 0, Rational(0));
        if (!v.empty()) v[0] = 1;
        return v;
      },
      {});
}

}  // namespace rht
