#include "rht/errors.hpp"
#include "rht/formality.hpp"

namespace rht {

std::optional<MasseySystem> massey_with_table(const CohomologyTable& table, int p, const Vector& a,
                                              int q, const Vector& b, int r, const Vector& c) {
  const auto& alg = table.algebra();
  const int n = p + q + r - 1;
  if (n > table.max_degree()) throw Error("cohomology table does not reach the Massey degree");
  auto require_cocycle = [&](int deg, const Vector& x, const char* what) {
    if (x.size() != alg->dimension(deg)) throw Error(std::string(what) + " has the wrong size");
    if (!is_zero(alg->differential(deg, x))) throw Error(std::string(what) + " is not a cocycle");
  };
  require_cocycle(p, a, "a");
  require_cocycle(q, b, "b");
  require_cocycle(r, c, "c");

  auto u = table.primitive(p + q, alg->multiply(p, a, q, b));
  if (!u) return std::nullopt;
  auto v = table.primitive(q + r, alg->multiply(q, b, r, c));
  if (!v) return std::nullopt;

  MasseySystem m;
  m.algebra = alg;
  m.degree_a = p;
  m.degree_b = q;
  m.degree_c = r;
  m.a = a;
  m.b = b;
  m.c = c;
  m.u = *u;
  m.v = *v;
  m.degree = n;
  m.value = alg->multiply(p + q - 1, m.u, r, c);
  axpy(m.value, Rational(p % 2 == 0 ? -1 : 1), alg->multiply(p, a, q + r - 1, m.v));
  m.value_class = table.class_of(n, m.value);

  EchelonBasis span(table.dimension(n));
  auto offer = [&](const Vector& cls) {
    if (span.insert(cls)) m.indeterminacy.push_back(cls);
  };
  for (const auto& h : table.representatives(q + r - 1)) {
    offer(table.class_of(n, alg->multiply(p, a, q + r - 1, h)));
  }
  for (const auto& h : table.representatives(p + q - 1)) {
    offer(table.class_of(n, alg->multiply(p + q - 1, h, r, c)));
  }
  m.contains_zero = span.contains(m.value_class);
  return m;
}

std::optional<MasseySystem> massey_triple(AlgebraPtr algebra, int p, const Vector& a, int q,
                                          const Vector& b, int r, const Vector& c) {
  if (p < 1 || q < 1 || r < 1) throw Error("Massey products need positive degrees");
  CohomologyTable table(algebra, p + q + r - 1);
  return massey_with_table(table, p, a, q, b, r, c);
}

bool verify_massey(const MasseySystem& m) {
  const auto& alg = *m.algebra;
  const int p = m.degree_a, q = m.degree_b, r = m.degree_c;
  if (m.degree != p + q + r - 1) return false;
  for (auto [deg, x] : {std::pair{p, &m.a}, std::pair{q, &m.b}, std::pair{r, &m.c}}) {
    if (!is_zero(alg.differential(deg, *x))) return false;
  }
  if (alg.differential(p + q - 1, m.u) != alg.multiply(p, m.a, q, m.b)) return false;
  if (alg.differential(q + r - 1, m.v) != alg.multiply(q, m.b, r, m.c)) return false;
  Vector value = alg.multiply(p + q - 1, m.u, r, m.c);
  axpy(value, Rational(p % 2 == 0 ? -1 : 1), alg.multiply(p, m.a, q + r - 1, m.v));
  if (value != m.value) return false;
  if (!is_zero(alg.differential(m.degree, value))) return false;

  CohomologyTable table(m.algebra, m.degree);
  if (table.class_of(m.degree, value) != m.value_class) return false;
  EchelonBasis products(table.dimension(m.degree));
  for (const auto& h : table.representatives(q + r - 1)) {
    products.insert(table.class_of(m.degree, alg.multiply(p, m.a, q + r - 1, h)));
  }
  for (const auto& h : table.representatives(p + q - 1)) {
    products.insert(table.class_of(m.degree, alg.multiply(p + q - 1, h, r, m.c)));
  }
  EchelonBasis given(table.dimension(m.degree));
  for (const auto& v : m.indeterminacy) {
    if (!products.contains(v) || !given.insert(v)) return false;
  }
  if (given.dimension() != products.dimension()) return false;
  return products.contains(m.value_class) == m.contains_zero;
}

}  // namespace rht
