#include <map>
#include <sstream>

#include "rht/bridge.hpp"
#include "rht/cdga_ops.hpp"
#include "rht/cli.hpp"
#include "rht/errors.hpp"
#include "rht/formality.hpp"
#include "rht/tensor_model.hpp"

namespace rht {

std::optional<std::string> Report::value(const std::string& key) const {
  for (const auto& section : entries_) {
    for (const auto& [k, v] : section) {
      if (k == key) return v;
    }
  }
  return std::nullopt;
}

void Report::add(int section, const std::string& key, const std::string& value) {
  entries_[section].emplace_back(key, value);
}

std::string Report::text() const {
  static const char* titles[] = {"inputs", "results", "certificate"};
  std::ostringstream os;
  os << "command: " << command_ << "\n";
  for (int s = 0; s < 3; ++s) {
    if (entries_[s].empty()) continue;
    os << "\n[" << titles[s] << "]\n";
    for (const auto& [k, v] : entries_[s]) os << k << ": " << v << "\n";
  }
  if (!warnings_.empty()) {
    os << "\n[warnings]\n";
    for (const auto& w : warnings_) os << "- " << w << "\n";
  }
  return os.str();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "check",    "cohomology", "minimal-model", "bigraded-model", "formality", "massey",
      "regular-seq", "cstar",  "map-model",     "sphere-map",     "audit"};
  return names;
}

namespace {

template <class T>
std::string join(const std::vector<T>& xs, const std::string& sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

std::string generator_list(const GeneratorSet& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs.all()) out.push_back(g.name + ":" + std::to_string(g.degree));
  return out.empty() ? "(none)" : join(out, ", ");
}

std::string vector_text(const Vector& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(to_string(c));
  return "(" + join(out, ", ") + ")";
}

int require_max(const CommandOptions& o, const std::string& cmd) {
  if (!o.max_degree) throw Error(cmd + " requires --max-degree");
  if (*o.max_degree < 0) throw Error("--max-degree must be non-negative");
  return *o.max_degree;
}

void require_files(const std::vector<ModelFile>& files, std::size_t n, const std::string& cmd) {
  if (files.size() != n)
    throw Error(cmd + " takes " + std::to_string(n) + " model file" + (n == 1 ? "" : "s"));
}

const ModelSection& algebra_section(const ModelFile& f, const CommandOptions& o) {
  return f.section(o.section, SectionKind::Algebra);
}

void describe_algebra(Report& r, const std::string& prefix, const SullivanAlgebra& a) {
  const auto& gs = a.generators();
  r.result(prefix + "generators", generator_list(gs));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!a.differential_of(i).is_zero())
      r.result(prefix + "d " + gs[i].name, a.format(a.differential_of(i)));
  }
}

std::string images_text(const CdgaMorphism& f, std::size_t i) {
  const auto& gs = f.sullivan_source()->generators();
  return f.target()->format(gs.degree(i), f.generator_images()[i]);
}

// ------------------------------------------------------------- commands

Report cmd_check(const CommandOptions&, const std::vector<ModelFile>& files) {
  require_files(files, 1, "check");
  Report r("check");
  const auto& f = files[0];
  r.input("sections", std::to_string(f.sections.size()));
  for (const auto& s : f.sections) {
    const std::string prefix = s.name + ".";
    if (s.kind == SectionKind::Algebra) {
      r.result(prefix + "kind", "algebra");
      describe_algebra(r, prefix, *s.algebra);
      r.result(prefix + "d^2", "0 on every generator");
      r.result(prefix + "minimal", s.algebra->is_minimal() ? "yes" : "no");
    } else {
      const auto& gs = s.lie->generators();
      r.result(prefix + "kind", "lie");
      r.result(prefix + "generators", generator_list(gs));
      for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!s.lie->boundary_of(i).is_zero())
          r.result(prefix + "d " + gs[i].name, s.lie->format(s.lie->boundary_of(i)));
      }
      r.result(prefix + "d^2", "0 on every generator");
      r.result(prefix + "minimal", s.lie->is_minimal() ? "yes" : "no");
    }
  }
  return r;
}

Report cmd_cohomology(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "cohomology");
  const int n = require_max(o, "cohomology");
  const auto& s = algebra_section(files[0], o);
  Report r("cohomology");
  r.input("model", s.name);
  r.input("max-degree", std::to_string(n));
  CohomologyTable t(s.algebra, n);
  std::vector<std::size_t> dims;
  for (int k = 0; k <= n; ++k) dims.push_back(t.dimension(k));
  r.result("dims", join(dims));
  for (int k = 0; k <= n; ++k) {
    if (t.dimension(k) == 0) continue;
    std::vector<std::string> reps;
    for (const auto& z : t.representatives(k)) reps.push_back("[" + s.algebra->format(k, z) + "]");
    r.result("H^" + std::to_string(k), join(reps, ", "));
  }
  r.result("euler characteristic", std::to_string(t.euler_characteristic()));
  return r;
}

Report cmd_minimal_model(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "minimal-model");
  const int n = require_max(o, "minimal-model");
  const auto& s = algebra_section(files[0], o);
  Report r("minimal-model");
  r.input("model", s.name);
  r.input("max-degree", std::to_string(n));
  auto mm = minimal_model(s.algebra, n);
  describe_algebra(r, "", *mm.algebra);
  const auto& gs = mm.algebra->generators();
  for (std::size_t i = 0; i < gs.size(); ++i) r.result("phi(" + gs[i].name + ")", images_text(mm.map, i));
  if (!mm.algebra->is_minimal() || !check_morphism(mm.map, n).quasi_isomorphism_up_to_bound())
    throw InvariantViolation("minimal model certificate failed on re-check");
  r.certificate("minimal", "every differential is decomposable");
  r.certificate("quasi-isomorphism", "H(phi) is an isomorphism in degrees 0.." + std::to_string(n));
  return r;
}

Report cmd_bigraded_model(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "bigraded-model");
  const int n = require_max(o, "bigraded-model");
  const auto& s = algebra_section(files[0], o);
  Report r("bigraded-model");
  r.input("model", s.name);
  r.input("max-degree", std::to_string(n));
  auto h = std::make_shared<const FiniteCdga>(cohomology_algebra(CohomologyTable(s.algebra, n)));
  auto b = bigraded_model(h, n);
  const auto& gs = b.algebra->generators();
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < gs.size(); ++i)
    gens.push_back(gs[i].name + ":" + std::to_string(gs[i].degree) + " (k=" +
                   std::to_string(b.lower[i]) + ")");
  r.result("generators", gens.empty() ? "(none)" : join(gens, ", "));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!b.algebra->differential_of(i).is_zero())
      r.result("d " + gs[i].name, b.algebra->format(b.algebra->differential_of(i)));
  }
  for (std::size_t i = 0; i < gs.size(); ++i) r.result("rho(" + gs[i].name + ")", images_text(*b.rho, i));
  if (b.grading_violation() || !check_morphism(*b.rho, n).quasi_isomorphism_up_to_bound())
    throw InvariantViolation("bigraded model certificate failed on re-check");
  r.certificate("grading law", "d(Z_k) lies in (∧Z)_{k-1} for every generator");
  r.certificate("quasi-isomorphism", "H(rho) is an isomorphism in degrees 0.." + std::to_string(n));
  if (!h->complete()) r.warn("cohomology truncated at degree " + std::to_string(n));
  return r;
}

void describe_verdict(Report& r, const FormalityVerdict& v) {
  r.result("status", to_string(v.status));
  r.result("bound", std::to_string(v.bound));
  if (v.status == FormalityStatus::CertifiedFormal) {
    const auto& w = *v.formal;
    r.certificate("route", w.route);
    const auto& psi = *w.psi;
    const auto& gs = psi.sullivan_source()->generators();
    for (std::size_t i = 0; i < gs.size(); ++i) r.certificate("psi(" + gs[i].name + ")", images_text(psi, i));
    if (w.regularity) {
      std::vector<std::string> seq;
      for (const auto& f : w.regularity->sequence) seq.push_back(to_string(w.regularity->ring, f));
      r.certificate("regular sequence", seq.empty() ? "(empty)" : join(seq, "; "));
    }
    r.certificate("verified", "psi is a quasi-isomorphism onto an algebra with zero differential in degrees 0.." +
                                  std::to_string(v.bound));
  } else if (v.status == FormalityStatus::CertifiedNonformal) {
    const auto& m = *v.massey;
    const auto& a = *m.algebra;
    r.certificate("massey", "<" + a.format(m.degree_a, m.a) + ", " + a.format(m.degree_b, m.b) + ", " +
                                a.format(m.degree_c, m.c) + ">");
    r.certificate("u", a.format(m.degree_a + m.degree_b - 1, m.u));
    r.certificate("v", a.format(m.degree_b + m.degree_c - 1, m.v));
    r.certificate("value", a.format(m.degree, m.value));
    r.certificate("degree", std::to_string(m.degree));
    r.certificate("class", vector_text(m.value_class));
    r.certificate("indeterminacy dimension", std::to_string(m.indeterminacy.size()));
    r.certificate("verified", "class is outside the indeterminacy");
  }
  r.result("psi branches", std::to_string(v.branches));
  if (!v.detail.empty()) r.result("detail", v.detail);
}

Report cmd_formality(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "formality");
  const int n = require_max(o, "formality");
  const auto& s = algebra_section(files[0], o);
  Report r("formality");
  r.input("model", s.name);
  r.input("max-degree", std::to_string(n));
  r.input("backtrack-cap", std::to_string(o.backtrack_cap));
  FormalityOptions fo;
  fo.backtrack_cap = o.backtrack_cap;
  auto v = formality_check(s.algebra, n, fo);
  verify_certificate(v);
  describe_verdict(r, v);
  if (v.status == FormalityStatus::Inconclusive) r.warn("inconclusive is not a refutation");
  return r;
}

Report cmd_massey(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "massey");
  const auto& s = algebra_section(files[0], o);
  if (o.triple.size() != 3) throw Error("massey needs exactly three --class expressions");
  Report r("massey");
  r.input("model", s.name);
  const auto& gs = s.algebra->generators();
  std::vector<int> deg;
  std::vector<Vector> vec;
  for (const auto& text : o.triple) {
    Element e = parse_element(gs, text);
    auto d = e.homogeneous_degree();
    if (e.is_zero() || !d) throw NonHomogeneousInput("'" + text + "' is zero or not homogeneous");
    deg.push_back(*d);
    vec.push_back(s.algebra->to_vector(*d, e));
    r.input("class", s.algebra->format(e));
  }
  auto m = massey_triple(s.algebra, deg[0], vec[0], deg[1], vec[1], deg[2], vec[2]);
  if (!m) {
    r.result("defined", "no ([a][b] or [b][c] is nonzero)");
    return r;
  }
  if (!verify_massey(*m)) throw InvariantViolation("Massey system failed on re-check");
  const auto& a = *s.algebra;
  r.result("defined", "yes");
  r.result("u", a.format(deg[0] + deg[1] - 1, m->u));
  r.result("v", a.format(deg[1] + deg[2] - 1, m->v));
  r.result("value", a.format(m->degree, m->value));
  r.result("degree", std::to_string(m->degree));
  r.result("class", vector_text(m->value_class));
  r.result("indeterminacy dimension", std::to_string(m->indeterminacy.size()));
  r.result("contains zero", m->contains_zero ? "yes" : "no");
  return r;
}

Report cmd_regular_seq(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "regular-seq");
  const int n = require_max(o, "regular-seq");
  const auto& s = algebra_section(files[0], o);
  const auto& gs = s.algebra->generators();
  Report r("regular-seq");
  r.input("model", s.name);
  r.input("max-degree", std::to_string(n));
  std::vector<Element> polys;
  if (o.polys.empty()) {
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (gs.odd(i) && !s.algebra->differential_of(i).is_zero())
        polys.push_back(s.algebra->differential_of(i));
    }
    r.input("sequence source", "differentials of the odd generators");
  } else {
    for (const auto& p : o.polys) polys.push_back(parse_element(gs, p));
  }
  std::vector<std::string> shown;
  for (const auto& p : polys) shown.push_back(s.algebra->format(p));
  r.input("sequence", shown.empty() ? "(empty)" : join(shown, "; "));
  auto v = regular_sequence_check(gs, polys, n);
  r.result("status", v.status == RegularityStatus::RegularUpToBound ? "REGULAR_UP_TO_BOUND"
                                                                    : "NOT_REGULAR");
  r.result("bound", std::to_string(v.bound));
  if (v.status == RegularityStatus::NotRegular) {
    r.result("failing element", std::to_string(v.index + 1));
    r.result("degree", std::to_string(v.degree));
    r.result("witness", v.witness());
  }
  return r;
}

void describe_cstar(Report& r, const CstarModel& c) {
  describe_algebra(r, "", *c.algebra);
  const auto& gs = c.algebra->generators();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (c.algebra->is_partial(i))
      r.warn("d " + gs[i].name + " is only known up to the truncation at degree " +
             std::to_string(c.max_degree));
  }
}

Report cmd_cstar(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "cstar");
  const int n = require_max(o, "cstar");
  const auto& s = files[0].section(o.section, SectionKind::Lie);
  Report r("cstar");
  r.input("model", s.name);
  r.input("max-degree", std::to_string(n));
  describe_cstar(r, cstar(*s.lie, n));
  return r;
}

Report cmd_map_model(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 2, "map-model");
  const int n = require_max(o, "map-model");
  const auto& x = files[0].section(std::nullopt, SectionKind::Algebra);
  const auto& l = files[1].section(o.section, SectionKind::Lie);
  Report r("map-model");
  r.input("source", x.name);
  r.input("lie model", l.name);
  r.input("max-degree", std::to_string(n));
  auto fm = finite_dimensional_model(x.algebra, n);
  r.result("finite model top degree", std::to_string(fm.top_degree));
  r.result("finite model dimension", std::to_string(fm.quotient->total_dimension()));
  StructureReport sr;
  auto m = mapping_space_lie_model(fm.quotient, l.lie, n, &sr);
  std::vector<std::size_t> dims, hom;
  for (int k = 0; k <= n; ++k) {
    dims.push_back(m->dimension(k));
    hom.push_back(homology(*m, k).dimension);
  }
  r.result("dims", join(dims));
  r.result("homology dims", join(hom));
  auto ev = evaluation_maps(m, n);
  if (!sr.ok() || !is_identity(compose(ev.projection, ev.section)))
    throw InvariantViolation("mapping model structure failed on re-check");
  r.certificate("structure", "D^2 = 0, antisymmetry, derivation and Jacobi through degree " +
                                 std::to_string(n));
  r.certificate("evaluation", "projection∘section = id");
  if (o.with_cstar) describe_cstar(r, cstar(*m, n));
  return r;
}

Report cmd_sphere_map(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 1, "sphere-map");
  if (!o.p) throw Error("sphere-map requires --p");
  const auto& s = algebra_section(files[0], o);
  Report r("sphere-map");
  r.input("model", s.name);
  r.input("p", std::to_string(*o.p));
  auto sm = sphere_mapping_space_model(s.algebra, *o.p);
  describe_algebra(r, "", *sm.algebra);
  std::vector<int> degs;
  for (const auto& g : sm.algebra->generators().all()) degs.push_back(g.degree);
  r.result("degrees", join(degs));
  r.result("minimal", sm.algebra->is_minimal() ? "yes" : "no");
  const auto& src = *sm.source;
  for (std::size_t i = 0; i < src.num_generators(); ++i) {
    const int d = src.generators().degree(i);
    Vector back = sm.projection.apply(d, sm.inclusion.generator_images()[i]);
    if (back != src.to_vector(d, src.generator(i)))
      throw InvariantViolation("projection∘inclusion is not the identity");
  }
  r.certificate("d^2", "0 on every generator");
  r.certificate("retract", "projection∘inclusion = id on generators");
  return r;
}

std::string observed_formality(const std::optional<FormalityVerdict>& v) {
  if (!v) return "undecided";
  switch (v->status) {
    case FormalityStatus::CertifiedFormal:
      return "formal";
    case FormalityStatus::CertifiedNonformal:
      return "not formal";
    case FormalityStatus::Inconclusive:
      return "undecided";
  }
  return "undecided";
}

Report cmd_audit(const CommandOptions& o, const std::vector<ModelFile>& files) {
  require_files(files, 2, "audit");
  const int n = require_max(o, "audit");
  const auto& x = files[0].section(std::nullopt, SectionKind::Algebra);
  const auto& y = files[1].section(o.section, SectionKind::Algebra);
  Report r("audit");
  r.input("X", x.name);
  r.input("Y", y.name);
  r.input("max-degree", std::to_string(n));

  auto retract = odd_spherical_retract(x.algebra);
  const bool assumption1 = retract.has_value();
  r.result("assumption 1", assumption1 ? "holds (odd spherical retract on " + retract->t.name + ")"
                                       : "fails (no odd spherical retract)");

  // X-top degree and connectivity of Y
  CohomologyTable hx(x.algebra, n);
  int top = -1, classes = 0;
  for (int k = 1; k <= n; ++k) {
    if (hx.dimension(k) == 0) continue;
    top = k;
    classes += static_cast<int>(hx.dimension(k));
  }
  const bool sphere = top > 0 && classes == 1 && hx.dimension(top) == 1;
  int m = -1;
  for (const auto& g : y.algebra->generators().all()) m = (m < 0 || g.degree - 1 < m) ? g.degree - 1 : m;
  r.result("N (top degree of X)", top > 0 ? std::to_string(top) : "none up to the bound");
  r.result("Y connectivity m", m >= 0 ? std::to_string(m) : "contractible");
  const bool connectivity = top > 0 && m >= top + 1;
  r.result("hypothesis m >= N+1", connectivity ? "holds" : "fails");

  std::optional<FormalityVerdict> fv;
  if (sphere) {
    r.result("mapping model", "F(S^" + std::to_string(top) + ", Y) via the sphere model");
    try {
      auto sm = sphere_mapping_space_model(y.algebra, top);
      FormalityOptions fo;
      fo.backtrack_cap = o.backtrack_cap;
      fv = formality_check(sm.algebra, n, fo);
      verify_certificate(*fv);
      r.result("F formality", to_string(fv->status));
    } catch (const Error& e) {
      r.result("F formality", std::string("NOT_DECIDED (") + e.what() + ")");
    }
  } else {
    r.result("F formality", "NOT_DECIDED (mapping models are built for spheres X only)");
    r.warn("X is not a rational sphere up to the bound");
  }

  auto hy = std::make_shared<const FiniteCdga>(cohomology_algebra(CohomologyTable(y.algebra, n)));
  auto free = is_free_graded_commutative(*hy, n);
  r.result("H(Y) freeness", to_string(free.status));
  const bool not_free = free.status == FreenessStatus::NotFree;
  const std::string observed = "F " + observed_formality(fv) + ", H(Y) " + (not_free ? "not free" : "free");

  if (!assumption1) {
    r.result("narrative", "assumption 1 fails (no odd spherical retract); formality of F does NOT force "
                          "free cohomology; observed: " + observed);
    r.result("consistent with Main Theorem", "yes (no claim without assumption 1)");
  } else {
    r.result("prediction", "if F(X,Y) is formal then H(Y) is free");
    if (not_free) r.result("diagnostic", "H(Y) NOT_FREE, so F(X,Y) is expected to be non-formal");
    r.result("narrative", "assumption 1 holds; observed: " + observed);
    const bool contradiction = connectivity && fv &&
                               fv->status == FormalityStatus::CertifiedFormal && not_free;
    r.result("consistent with Main Theorem", contradiction ? "no" : "yes");
  }
  if (!connectivity)
    r.warn("the Main Theorem needs Y m-connected with m >= N+1; here m = " + std::to_string(m) +
           ", N = " + std::to_string(top));
  if (free.status == FreenessStatus::FreeUpToBound)
    r.warn("freeness of H(Y) is only checked up to degree " + std::to_string(n));
  return r;
}

}  // namespace

Report run_command(const std::string& name, const CommandOptions& options,
                   const std::vector<ModelFile>& files) {
  if (options.format != "text") throw Error("unsupported format '" + options.format + "'");
  if (name == "check") return cmd_check(options, files);
  if (name == "cohomology") return cmd_cohomology(options, files);
  if (name == "minimal-model") return cmd_minimal_model(options, files);
  if (name == "bigraded-model") return cmd_bigraded_model(options, files);
  if (name == "formality") return cmd_formality(options, files);
  if (name == "massey") return cmd_massey(options, files);
  if (name == "regular-seq") return cmd_regular_seq(options, files);
  if (name == "cstar") return cmd_cstar(options, files);
  if (name == "map-model") return cmd_map_model(options, files);
  if (name == "sphere-map") return cmd_sphere_map(options, files);
  if (name == "audit") return cmd_audit(options, files);
  throw Error("unknown command '" + name + "'");
}

}  // namespace rht
