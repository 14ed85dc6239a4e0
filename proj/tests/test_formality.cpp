#include <doctest.h>

#include "fixtures.hpp"
#include "rht/bridge.hpp"
#include "rht/cdga_ops.hpp"
#include "rht/errors.hpp"
#include "rht/formality.hpp"

using namespace rht;
using fixtures::poly;
using fixtures::Term;

namespace {

std::vector<int> degrees(const SullivanAlgebra& a) {
  std::vector<int> out;
  for (const auto& g : a.generators().all()) out.push_back(g.degree);
  return out;
}

std::vector<std::size_t> cohomology_dims(const GradedAlgebra& a, int max) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max; ++n) out.push_back(cohomology(a, n).dimension);
  return out;
}

// (Q[gens]/(relations), 0) truncated at `top`
FinitePtr polynomial_quotient(std::vector<Generator> gens, const std::vector<std::vector<Term>>& rels,
                              int top) {
  GeneratorSet gs(std::move(gens));
  auto free = SullivanAlgebra::free(gs);
  std::vector<Element> r;
  for (const auto& t : rels) r.push_back(poly(gs, t));
  return std::make_shared<const FiniteCdga>(quotient_algebra(free, r, top));
}

FinitePtr y_cohomology(int top) {
  return polynomial_quotient({{"x1", 4}, {"x2", 4}}, {{{1, {{"x1", 1}, {"x2", 1}}}}}, top);
}

// dim of (Q[gens]/(f_1..f_r))_n from the ideal rank
std::size_t quotient_dim(const SullivanAlgebra& p, const std::vector<Element>& fs, int n) {
  EchelonBasis span(p.dimension(n));
  for (const auto& f : fs) {
    int d = *f.homogeneous_degree();
    if (d > n) continue;
    for (const auto& m : p.basis(n - d))
      span.insert(p.to_vector(n, p.multiply(Element::monomial(m), f)));
  }
  return p.dimension(n) - span.dimension();
}

// coefficients of prod(1 - t^d_i) / prod(1 - t^e_j) up to t^max
std::vector<long> hilbert_series(const std::vector<int>& gen_degrees,
                                 const std::vector<int>& rel_degrees, int max) {
  std::vector<long> s(static_cast<std::size_t>(max + 1), 0);
  s[0] = 1;
  for (int e : gen_degrees)
    for (int n = e; n <= max; ++n) s[n] += s[n - e];
  for (int d : rel_degrees)
    for (int n = max; n >= d; --n) s[n] -= s[n - d];
  return s;
}

}  // namespace

TEST_CASE("minimal model of the truncated cohomology of Y") {
  auto h = y_cohomology(16);
  auto mm = minimal_model(h, 16);
  CHECK(degrees(*mm.algebra) == std::vector<int>{4, 4, 7});
  const auto& gs = mm.algebra->generators();
  auto y = gs.index("y7");
  Element dy = mm.algebra->differential_of(y);
  // dy = c x1 x2 with c != 0, nothing else
  REQUIRE(dy.size() == 1);
  CHECK(dy.terms().begin()->first == make_monomial(gs, {{0, 1}, {1, 1}}));
  CHECK(mm.algebra->is_minimal());
  // H of Q[x1,x2]/(x1x2): 1 in degree 0, 2 in every positive multiple of 4
  std::vector<std::size_t> expected(17, 0);
  expected[0] = 1;
  for (int n = 4; n <= 16; n += 4) expected[n] = 2;
  CHECK(cohomology_dims(*mm.algebra, 16) == expected);
  CHECK(check_morphism(mm.map, 16).quasi_isomorphism_up_to_bound());
}

TEST_CASE("minimal model of an already minimal algebra") {
  auto y = fixtures::y_model();
  auto mm = minimal_model(y, 12);
  CHECK(degrees(*mm.algebra) == std::vector<int>{4, 4, 7});
  for (int n = 0; n <= 12; ++n) {
    auto m = mm.map.matrix(n);
    CHECK(m.rows() == m.cols());
    CHECK(rank(m) == m.rows());
  }
}

TEST_CASE("minimal model of the cohomology of S^4") {
  auto h = polynomial_quotient({{"x", 4}}, {{{1, {{"x", 2}}}}}, 8);
  CHECK(h->total_dimension() == 2);
  auto mm = minimal_model(h, 12);
  CHECK(degrees(*mm.algebra) == std::vector<int>{4, 7});
  const auto& gs = mm.algebra->generators();
  Element dw = mm.algebra->differential_of(1);
  REQUIRE(dw.size() == 1);
  CHECK(dw.terms().begin()->first == generator_monomial(gs, 0, 2));
  std::vector<std::size_t> expected(13, 0);
  expected[0] = expected[4] = 1;
  CHECK(cohomology_dims(*mm.algebra, 12) == expected);
}

TEST_CASE("models reject H^1 != 0") {
  auto circle = fixtures::sullivan({{"t", 1}}, {});
  CHECK_THROWS_AS(minimal_model(circle, 4), NotSimplyConnected);
  auto h = std::make_shared<const FiniteCdga>(exterior_on_odd_generator("t", 1));
  CHECK_THROWS_AS(bigraded_model(h, 4), NotSimplyConnected);
}

TEST_CASE("bigraded model of Q[x1,x2]/(x1x2)") {
  auto b = bigraded_model(y_cohomology(16), 12);
  const auto& gs = b.algebra->generators();
  REQUIRE(gs.size() == 3);
  CHECK(gs[0].name == "x1");
  CHECK(gs[1].name == "x2");
  CHECK(gs[2].degree == 7);
  CHECK(b.lower == std::vector<int>{0, 0, 1});
  CHECK(b.algebra->differential_of(2) == poly(gs, {{1, {{"x1", 1}, {"x2", 1}}}}));
  CHECK_FALSE(b.grading_violation());
  CHECK(is_zero(b.rho->generator_images()[2]));
}

TEST_CASE("bigraded model of an exterior algebra") {
  auto h = std::make_shared<const FiniteCdga>(exterior_on_odd_generator("t", 3));
  auto b = bigraded_model(h, 10);
  REQUIRE(b.algebra->num_generators() == 1);
  CHECK(b.algebra->generators()[0].name == "t");
  CHECK(b.lower == std::vector<int>{0});
  CHECK(b.algebra->differential_of(0).is_zero());
}

TEST_CASE("bigraded model of Q[u]/(u^3)") {
  auto h = polynomial_quotient({{"u", 2}}, {{{1, {{"u", 3}}}}}, 10);
  auto b = bigraded_model(h, 10);
  const auto& gs = b.algebra->generators();
  REQUIRE(gs.size() == 2);
  CHECK(gs[1].degree == 5);
  CHECK(b.lower == std::vector<int>{0, 1});
  CHECK(b.algebra->differential_of(1) == poly(gs, {{1, {{"u", 3}}}}));
  // oracle: ∧(u, v; dv = u^3) has H = Q{1, u, u^2}
  auto oracle = fixtures::sullivan({{"u", 2}, {"v", 5}}, {{"v", {{1, {{"u", 3}}}}}});
  CHECK(cohomology_dims(*b.algebra, 10) == cohomology_dims(*oracle, 10));
  CHECK(cohomology_dims(*b.algebra, 10) ==
        std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("grading law is detected") {
  auto a = fixtures::sullivan({{"w", 4}, {"v", 7}}, {{"v", {{1, {{"w", 2}}}}}});
  BigradedModel b{a, {1, 2}, std::nullopt, 10};
  CHECK(b.grading_violation() == std::optional<std::string>("v"));
  b.lower = {1, 3};
  CHECK_FALSE(b.grading_violation());
}

TEST_CASE("regular sequence from the mapping-space example, both orders") {
  auto m = fixtures::mapping_s2_model();
  const auto& gs = m->generators();
  Element f1 = m->differential_of(gs.index("y"));
  Element f2 = m->differential_of(gs.index("y_bar"));
  for (const auto& seq : {std::vector<Element>{f1, f2}, std::vector<Element>{f2, f1}}) {
    auto v = regular_sequence_check(gs, seq, 16);
    CHECK(v.status == RegularityStatus::RegularUpToBound);
    CHECK(v.bound == 16);
    CHECK(v.witness().empty());
  }
  // oracle: quotient dimensions match the Hilbert series of a complete intersection
  auto v = regular_sequence_check(gs, {f1, f2}, 16);
  auto p = SullivanAlgebra::free(v.ring);
  auto series = hilbert_series({2, 2, 4, 4}, {8, 6}, 16);
  for (int n = 0; n <= 16; ++n)
    CHECK(static_cast<long>(quotient_dim(p, v.sequence, n)) == series[n]);
}

TEST_CASE("regular sequence witnesses and errors") {
  GeneratorSet gs({{"x1", 4}, {"x2", 4}, {"o", 3}});
  Element x1 = generator_element(gs, gs.index("x1"));
  Element x2 = generator_element(gs, gs.index("x2"));
  auto bad = regular_sequence_check(gs, {x1, x1}, 12);
  REQUIRE(bad.status == RegularityStatus::NotRegular);
  CHECK(bad.index == 1);
  CHECK(bad.degree == 4);
  CHECK(bad.multiplier == Element::unit());
  CHECK(bad.coefficients[0] == Element::unit());
  CHECK(bad.witness() == "(1)*(x1) - (1)*(x1) = 0");

  CHECK(regular_sequence_check(gs, {x1, x2}, 16).status == RegularityStatus::RegularUpToBound);
  // x1^2, x1 x2 share the factor x1: x2 * x1^2 = x1 * (x1 x2)
  auto shared = regular_sequence_check(gs, {multiply(gs, x1, x1), multiply(gs, x1, x2)}, 16);
  REQUIRE(shared.status == RegularityStatus::NotRegular);
  CHECK(multiply(bad.ring, shared.multiplier, shared.sequence[1]) ==
        multiply(bad.ring, shared.coefficients[0], shared.sequence[0]));

  CHECK_THROWS_AS(regular_sequence_check(gs, {x1 + multiply(gs, x1, x1)}, 8), NonHomogeneousInput);
  CHECK_THROWS_AS(regular_sequence_check(gs, {generator_element(gs, gs.index("o"))}, 8), Error);
}

TEST_CASE("Koszul route") {
  auto y = koszul_formality(fixtures::y_model(), 16);
  REQUIRE(y.verdict);
  CHECK(y.verdict->status == FormalityStatus::CertifiedFormal);
  CHECK(y.verdict->formal->route == "koszul");
  CHECK_NOTHROW(verify_certificate(*y.verdict));

  auto f = koszul_formality(fixtures::mapping_s2_model(), 14);
  REQUIRE(f.verdict);
  CHECK(f.verdict->status == FormalityStatus::CertifiedFormal);

  auto rep = fixtures::sullivan({{"x", 4}, {"o", 7}, {"p", 7}},
                                {{"o", {{1, {{"x", 2}}}}}, {"p", {{1, {{"x", 2}}}}}});
  auto r = koszul_formality(rep, 16);
  CHECK(r.applicable);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.regularity);
  CHECK(r.regularity->status == RegularityStatus::NotRegular);
  CHECK(r.regularity->index == 1);

  auto nf = koszul_formality(fixtures::nonformal_model(), 12);
  CHECK_FALSE(nf.applicable);
  CHECK_FALSE(nf.verdict);

  // closed odd generators split off as an exterior factor
  auto s3 = koszul_formality(fixtures::s3_model(), 10);
  REQUIRE(s3.verdict);
  CHECK(s3.verdict->status == FormalityStatus::CertifiedFormal);
}

TEST_CASE("Massey triple <x,x,y> by hand") {
  auto a = fixtures::nonformal_model();
  const auto& gs = a->generators();
  auto x = a->to_vector(3, a->generator("x"));
  auto y = a->to_vector(3, a->generator("y"));
  auto m = massey_triple(a, 3, x, 3, x, 3, y);
  REQUIRE(m);
  // x^2 = 0 so u = 0; xy = dz so v = z; value = u y + x v = xz
  CHECK(is_zero(m->u));
  CHECK(m->v == a->to_vector(5, a->generator("z")));
  Element xz = a->multiply(a->generator("x"), a->generator("z"));
  CHECK(m->value == a->to_vector(8, xz));
  CohomologyTable t(a, 8);
  CHECK(m->value_class == t.class_of(8, a->to_vector(8, xz)));
  CHECK_FALSE(is_zero(m->value_class));
  // H^5 = 0, so [x] H^5 + H^5 [y] = 0
  CHECK(t.dimension(5) == 0);
  CHECK(m->indeterminacy.empty());
  CHECK_FALSE(m->contains_zero);
  CHECK(verify_massey(*m));
  (void)gs;
}

TEST_CASE("Massey triples in (H, 0) and undefined triples") {
  auto h = y_cohomology(16);
  Vector x1 = unit_vector(2, 0), x2 = unit_vector(2, 1);
  auto m = massey_triple(h, 4, x1, 4, x2, 4, x1);
  REQUIRE(m);
  CHECK(is_zero(m->u));
  CHECK(is_zero(m->v));
  CHECK(is_zero(m->value_class));
  CHECK(m->contains_zero);
  CHECK(verify_massey(*m));
  // [x1][x1] != 0
  CHECK_FALSE(massey_triple(h, 4, x1, 4, x1, 4, x2));
  // not a cocycle
  auto a = fixtures::nonformal_model();
  auto z = a->to_vector(5, a->generator("z"));
  auto x = a->to_vector(3, a->generator("x"));
  CHECK_THROWS_AS(massey_triple(a, 5, z, 3, x, 3, x), Error);
}

TEST_CASE("formality_check verdicts") {
  auto f = formality_check(fixtures::mapping_s2_model(), 14);
  CHECK(f.status == FormalityStatus::CertifiedFormal);
  CHECK(f.bound == 14);
  CHECK(f.formal->route == "koszul");

  // agreement with the psi route on the same input
  FormalityOptions no_koszul;
  no_koszul.try_koszul = false;
  auto g = formality_check(fixtures::mapping_s2_model(), 14, no_koszul);
  CHECK(g.status == FormalityStatus::CertifiedFormal);
  CHECK(g.formal->route == "psi");

  auto h = formality_check(y_cohomology(16), 16);
  CHECK(h.status == FormalityStatus::CertifiedFormal);
  CHECK(h.formal->route == "psi");
  CHECK(h.branches == 0);

  auto n = formality_check(fixtures::nonformal_model(), 11);
  REQUIRE(n.status == FormalityStatus::CertifiedNonformal);
  CHECK(n.massey->degree == 8);
  CHECK(n.massey->indeterminacy.empty());
  auto a = fixtures::nonformal_model();
  CHECK(n.massey->a == a->to_vector(3, a->generator("x")));
  CHECK(n.massey->b == a->to_vector(3, a->generator("x")));
  CHECK(n.massey->c == a->to_vector(3, a->generator("y")));

  FormalityOptions no_massey;
  no_massey.search_massey = false;
  auto i = formality_check(fixtures::nonformal_model(), 11, no_massey);
  CHECK(i.status == FormalityStatus::Inconclusive);
  CHECK(i.detail.find("degree 8") != std::string::npos);

  CHECK(to_string(FormalityStatus::CertifiedFormal) == "CERTIFIED_FORMAL");
}

TEST_CASE("tampered certificates are rejected") {
  auto n = formality_check(fixtures::nonformal_model(), 11);
  REQUIRE(n.massey);
  auto bad = n;
  bad.massey->value_class = zero_vector(bad.massey->value_class.size());
  CHECK_THROWS_AS(verify_certificate(bad), InvariantViolation);
}

TEST_CASE("Lemma 3.7 witness search") {
  auto a = fixtures::sullivan({{"w", 4}, {"wp", 7}}, {{"wp", {{1, {{"w", 2}}}}}});
  BigradedModel b{a, {1, 3}, std::nullopt, 12};
  auto w = lemma37_witness(b, 0, 12);
  REQUIRE(w);
  CHECK(w->w_prime == 1);
  CHECK(w->n == 2);
  CHECK(w->scale == Rational(1));
  CHECK(w->omega.is_zero());
  CHECK_FALSE(lemma37_witness(b, 0, 6));

  auto scaled = fixtures::sullivan({{"w", 4}, {"wp", 7}}, {{"wp", {{3, {{"w", 2}}}}}});
  auto s = lemma37_witness(BigradedModel{scaled, {1, 3}, std::nullopt, 12}, 0, 12);
  REQUIRE(s);
  CHECK(s->scale == Rational(1, 3));

  auto u3 = bigraded_model(polynomial_quotient({{"u", 2}}, {{{1, {{"u", 3}}}}}, 10), 10);
  CHECK_THROWS_AS(lemma37_witness(u3, 1, 10), Error);  // odd
  CHECK_THROWS_AS(lemma37_witness(u3, 0, 10), Error);  // lower grading 0
}

TEST_CASE("retract transfer") {
  auto y = fixtures::y_model();
  auto id = CdgaMorphism::identity(y);
  auto same = retract_transfer_check(id, id, 12);
  CHECK(same.confirmed);

  auto sm = sphere_mapping_space_model(y, 2);
  auto r = retract_transfer_check(sm.inclusion, sm.projection, 14);
  CHECK(r.target_verdict.status == FormalityStatus::CertifiedFormal);
  REQUIRE(r.source_verdict);
  CHECK(r.source_verdict->status == FormalityStatus::CertifiedFormal);
  CHECK(r.confirmed);

  // x1 -> 2 x1, y -> 2 y is a morphism but not a retraction of the identity
  const auto& gs = y->generators();
  std::vector<Vector> images;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Element g = y->generator(i);
    if (gs[i].name != "x2") g *= Rational(2);
    images.push_back(y->to_vector(gs.degree(i), g));
  }
  auto twice = CdgaMorphism::from_generator_images(y, y, images);
  CHECK_THROWS_AS(retract_transfer_check(id, twice, 10), NotARetract);
  CHECK_THROWS_AS(retract_transfer_check(sm.projection, sm.projection, 10), NotARetract);
}
