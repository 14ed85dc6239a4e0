#include <doctest.h>

#include <random>

#include "rht/matrix.hpp"

using namespace rht;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<Vector> rs;
  std::size_t cols = 0;
  for (auto r : rows) {
    Vector v;
    for (int x : r) v.emplace_back(x);
    cols = v.size();
    rs.push_back(v);
  }
  return Matrix::from_rows(rs, cols);
}

// Fraction-free (Bareiss) elimination over the integers after clearing
// denominators row by row. Independent of the rational Gauss-Jordan path.
std::size_t bareiss_rank(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int zero_bias) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), coin(0, 9);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(rng) >= zero_bias) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        m(r, c) = q;
      }
  return m;
}

}  // namespace

TEST_CASE("rref of the identity is itself with every column a pivot") {
  auto e = rref(Matrix::identity(2));
  CHECK(e.reduced == Matrix::identity(2));
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref of a rank-one matrix") {
  auto e = rref(mat({{1, 2}, {2, 4}}));
  CHECK(e.reduced == mat({{1, 2}, {0, 0}}));
  CHECK(e.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rank agrees with fraction-free elimination on random 5x5 matrices") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix m = random_matrix(rng, 5, 5, trial % 8);
    CHECK(rank(m) == bareiss_rank(m));
  }
}

TEST_CASE("kernel basis edge cases") {
  CHECK(kernel_basis(Matrix(3, 3)).size() == 3);
  CHECK(kernel_basis(Matrix(3, 3))[1] == unit_vector(3, 1));
  CHECK(kernel_basis(Matrix::identity(4)).empty());
  auto k = kernel_basis(mat({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vector{Rational(-1), Rational(1)});
}

TEST_CASE("solve uses the free-variables-zero convention") {
  Vector b{Rational(3), Rational(-1, 2)};
  CHECK(*solve(Matrix::identity(2), b) == b);
  CHECK(*solve(mat({{1, 1}}), Vector{Rational(1)}) == Vector{Rational(1), Rational(0)});
  CHECK_FALSE(solve(mat({{1}, {1}}), Vector{Rational(1), Rational(2)}).has_value());
}

TEST_CASE("rank-nullity, rref idempotence and solve correctness on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 7;
    Matrix m = random_matrix(rng, rows, cols, trial % 7);
    auto e = rref(m);
    CHECK(e.rank() + kernel_basis(m).size() == cols);
    CHECK(rref(e.reduced).reduced == e.reduced);
    for (const auto& k : kernel_basis(m)) CHECK(is_zero(m.apply(k)));
    Matrix rhs_source = random_matrix(rng, cols, 1, 3);
    Vector b = m.apply(rhs_source.column(0));
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
  }
}

TEST_CASE("echelon basis membership and reduction") {
  EchelonBasis e(3);
  CHECK(e.insert(Vector{Rational(1), Rational(1), Rational(0)}));
  CHECK(e.insert(Vector{Rational(0), Rational(1), Rational(1)}));
  CHECK_FALSE(e.insert(Vector{Rational(1), Rational(2), Rational(1)}));
  CHECK(e.contains(Vector{Rational(2), Rational(1), Rational(-1)}));
  CHECK_FALSE(e.contains(Vector{Rational(0), Rational(0), Rational(1)}));
  CHECK(e.dimension() == 2);
}

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}
