#include "rht/free_dgl.hpp"

#include "rht/errors.hpp"

namespace rht {

FreeDgl::FreeDgl() : gens_(std::make_shared<GeneratorSet>()), cache_(std::make_shared<Cache>()) {}

FreeDgl::FreeDgl(GeneratorSet gens, std::vector<LieElement> boundaries)
    : gens_(std::make_shared<GeneratorSet>(std::move(gens))),
      boundary_(std::move(boundaries)),
      cache_(std::make_shared<Cache>()) {
  if (boundary_.empty()) boundary_.resize(gens_->size());
  if (boundary_.size() != gens_->size())
    throw Error("boundary list does not match the generators");
  for (std::size_t i = 0; i < gens_->size(); ++i) {
    const auto& g = (*gens_)[i];
    LieElement& b = boundary_[i];
    if (b.is_zero()) {
      b = LieElement(g.degree - 1);
      continue;
    }
    if (b.degree() != g.degree - 1)
      throw DegreeMismatch("d(" + g.name + ") has degree " + std::to_string(b.degree()) +
                           ", expected " + std::to_string(g.degree - 1));
    if (!try_coordinates(b.degree(), b))
      throw Error("d(" + g.name + ") = " + to_string(*gens_, b) +
                  " is not in the free Lie algebra");
  }
  for (std::size_t i = 0; i < gens_->size(); ++i) {
    LieElement dd = boundary(boundary_[i]);
    if (!dd.is_zero())
      throw DifferentialNotSquareZero("d(d(" + (*gens_)[i].name + ")) = " + to_string(*gens_, dd));
  }
}

LieElement FreeDgl::boundary(const LieElement& x) const {
  LieElement out(x.degree() - 1);
  for (const auto& [w, c] : x.terms()) {
    int prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const LieElement& db = boundary_[w[i]];
      if (!db.is_zero()) {
        const Rational s = c * sign_of_parity(prefix);
        for (const auto& [u, a] : db.terms()) {
          Word nw(w.begin(), w.begin() + i);
          nw.insert(nw.end(), u.begin(), u.end());
          nw.insert(nw.end(), w.begin() + i + 1, w.end());
          out.add_term(nw, s * a);
        }
      }
      prefix += gens_->degree(w[i]);
    }
  }
  return out;
}

bool FreeDgl::is_minimal() const {
  for (const auto& b : boundary_) {
    for (const auto& [w, c] : b.terms()) {
      if (w.size() < 2) return false;
    }
  }
  return true;
}

bool FreeDgl::has_zero_boundary() const {
  for (const auto& b : boundary_) {
    if (!b.is_zero()) return false;
  }
  return true;
}

FreeDgl::Degree& FreeDgl::degree_data(int n) const {
  auto it = cache_->degrees.find(n);
  if (it != cache_->degrees.end()) return it->second;
  Degree deg;
  if (n >= 1) {
    for (std::size_t g = 0; g < gens_->size(); ++g) {
      const int dg = gens_->degree(g);
      if (dg == n) {
        deg.words.push_back(Word{static_cast<std::uint32_t>(g)});
      } else if (dg < n) {
        for (const Word& tail : degree_data(n - dg).words) {
          Word w{static_cast<std::uint32_t>(g)};
          w.insert(w.end(), tail.begin(), tail.end());
          deg.words.push_back(std::move(w));
        }
      }
    }
    for (std::size_t i = 0; i < deg.words.size(); ++i) deg.word_index.emplace(deg.words[i], i);

    const std::size_t nw = deg.words.size();
    auto to_words = [&deg, nw](const LieElement& x) {
      Vector v = zero_vector(nw);
      for (const auto& [w, c] : x.terms()) v[deg.word_index.at(w)] = c;
      return v;
    };
    EchelonBasis span(nw);
    std::vector<Vector> columns;
    auto consider = [&](LieElement x, std::string label) {
      Vector v = to_words(x);
      if (!span.insert(v)) return;
      columns.push_back(std::move(v));
      deg.basis.push_back(std::move(x));
      deg.labels.push_back(std::move(label));
    };
    for (std::size_t g = 0; g < gens_->size(); ++g) {
      if (gens_->degree(g) == n) consider(generator(g), (*gens_)[g].name);
    }
    for (std::size_t g = 0; g < gens_->size(); ++g) {
      const int dg = gens_->degree(g);
      if (dg >= n) continue;
      const Degree& lower = degree_data(n - dg);
      for (std::size_t j = 0; j < lower.basis.size(); ++j) {
        consider(rht::bracket(generator(g), lower.basis[j]),
                 "[" + (*gens_)[g].name + "," + lower.labels[j] + "]");
      }
    }
    deg.solver.emplace(Matrix::from_columns(columns, nw));
  }
  return cache_->degrees.emplace(n, std::move(deg)).first->second;
}

const std::vector<LieElement>& FreeDgl::basis(int n) const {
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).basis;
}

const std::vector<Word>& FreeDgl::words(int n) const {
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).words;
}

std::size_t FreeDgl::dimension(int n) const { return n < 1 ? 0 : basis(n).size(); }

Vector FreeDgl::word_vector(int n, const LieElement& x) const {
  std::lock_guard lock(cache_->mutex);
  const Degree& deg = degree_data(n);
  Vector v = zero_vector(deg.words.size());
  if (!x.is_zero() && x.degree() != n)
    throw NonHomogeneousInput("Lie element of degree " + std::to_string(x.degree()) +
                              " read in degree " + std::to_string(n));
  for (const auto& [w, c] : x.terms()) {
    auto it = deg.word_index.find(w);
    if (it == deg.word_index.end()) throw Error("word outside the generator set");
    v[it->second] = c;
  }
  return v;
}

std::optional<Vector> FreeDgl::try_coordinates(int n, const LieElement& x) const {
  if (n < 1) {
    if (x.is_zero()) return Vector{};
    return std::nullopt;
  }
  Vector w = word_vector(n, x);
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).solver->solve(w);
}

Vector FreeDgl::coordinates(int n, const LieElement& x) const {
  auto c = try_coordinates(n, x);
  if (!c) throw Error(to_string(*gens_, x) + " is not in the free Lie algebra");
  return *c;
}

LieElement FreeDgl::from_coordinates(int n, const Vector& v) const {
  const auto& b = basis(n);
  LieElement out(n);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) out += v[i] * b[i];
  }
  return out;
}

std::string FreeDgl::format(const LieElement& x) const {
  auto c = try_coordinates(x.degree(), x);
  if (!c) return to_string(*gens_, x);
  return DglView::format(x.degree(), *c);
}

Matrix FreeDgl::boundary_matrix(int n) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (n >= 1 && degree_data(n).boundary) return *degree_data(n).boundary;
  }
  Matrix m(dimension(n - 1), dimension(n));
  if (n >= 2) {
    const auto& b = basis(n);
    for (std::size_t j = 0; j < b.size(); ++j) {
      Vector c = coordinates(n - 1, boundary(b[j]));
      for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
    }
  }
  if (n >= 1) {
    std::lock_guard lock(cache_->mutex);
    degree_data(n).boundary = m;
  }
  return m;
}

Vector FreeDgl::bracket(int p, const Vector& x, int q, const Vector& y) const {
  return coordinates(p + q, rht::bracket(from_coordinates(p, x), from_coordinates(q, y)));
}

std::string FreeDgl::basis_label(int n, std::size_t i) const {
  std::lock_guard lock(cache_->mutex);
  return degree_data(n).labels.at(i);
}

AbelianDgl abelianization(const FreeDgl& l, int max_degree) {
  const auto& gens = l.generators();
  GradedBasis basis;
  basis.labels.resize(static_cast<std::size_t>(std::max(max_degree, 0) + 1));
  std::vector<std::vector<std::size_t>> index(basis.labels.size());
  std::vector<std::size_t> position(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const int d = gens.degree(g);
    if (d > max_degree) continue;
    position[g] = basis.labels[d].size();
    basis.labels[d].push_back(gens[g].name);
    index[d].push_back(g);
  }
  std::vector<Matrix> boundary(basis.labels.size());
  for (int n = 2; n <= max_degree; ++n) {
    Matrix m(basis.dimension(n - 1), basis.dimension(n));
    for (std::size_t j = 0; j < index[n].size(); ++j) {
      for (const auto& [w, c] : l.boundary_of(index[n][j]).terms()) {
        if (w.size() == 1) m(position[w[0]], j) = c;
      }
    }
    boundary[n] = std::move(m);
  }
  return AbelianDgl(std::move(basis), std::move(boundary));
}

}  // namespace rht
