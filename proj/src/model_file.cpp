#include "rht/model_file.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rht/errors.hpp"

namespace rht {

namespace {

// Parse value in a lie section: a scalar or a Lie element.
struct LieValue {
  bool scalar = true;
  Rational c = 1;
  LieElement x;
};

class ExprParser {
 public:
  ExprParser(const std::string& text, int line, int column0, const GeneratorSet& gens)
      : s_(text), line_(line), col0_(column0), gens_(gens) {}

  Element algebra_expression() {
    Element e = alg_expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  LieValue lie_expression() {
    LieValue v = lie_expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, col0_ + static_cast<int>(pos_));
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  bool at_ident() {
    skip();
    return pos_ < s_.size() &&
           (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Rational number() {
    std::string text = digits();
    skip();
    // p/q only when a digit follows the slash
    std::size_t save = pos_;
    if (accept('/') && at_digit()) {
      std::string den = digits();
      if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
      return parse_rational(text + "/" + den);
    }
    pos_ = save;
    return parse_rational(text);
  }

  std::size_t identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    auto i = gens_.find(name);
    if (!i) {
      pos_ = start;
      fail("unknown generator '" + name + "'");
    }
    return *i;
  }

  int exponent() {
    if (!at_digit()) fail("expected an exponent");
    std::string d = digits();
    if (d.size() > 4) fail("exponent too large");
    return std::stoi(d);
  }

  // ------------------------------------------------------------ algebra

  Element alg_expr() {
    Element out;
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    for (;;) {
      Element t = alg_term();
      if (negative) out -= t;
      else out += t;
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else break;
    }
    return out;
  }

  Element alg_term() {
    Element t = alg_factor();
    while (accept('*')) t = multiply(gens_, t, alg_factor());
    return t;
  }

  Element alg_factor() {
    skip();
    Element f;
    if (at_digit()) {
      return Element::scalar(number());
    } else if (at_ident()) {
      f = generator_element(gens_, identifier());
    } else if (accept('(')) {
      f = alg_expr();
      expect(')');
    } else if (pos_ < s_.size() && s_[pos_] == '[') {
      fail("brackets are only allowed in lie sections");
    } else {
      fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'"
                            : "unexpected end of expression");
    }
    if (accept('^')) f = power(gens_, f, exponent());
    return f;
  }

  // ---------------------------------------------------------------- lie

  LieValue lie_expr() {
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    std::size_t start = pos_;
    LieValue out = lie_term();
    if (negative) negate(out);
    for (;;) {
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else break;
      std::size_t at = pos_;
      LieValue t = lie_term();
      if (negative) negate(t);
      if (t.scalar != out.scalar) {
        pos_ = at;
        fail("cannot add a scalar and a Lie element");
      }
      if (out.scalar) {
        out.c += t.c;
      } else {
        if (!t.x.is_zero() && !out.x.is_zero() && t.x.degree() != out.x.degree()) {
          pos_ = start;
          fail("terms of different degrees");
        }
        if (out.x.is_zero()) out.x = t.x;
        else if (!t.x.is_zero()) out.x += t.x;
      }
    }
    return out;
  }

  static void negate(LieValue& v) {
    if (v.scalar) v.c = -v.c;
    else v.x = -v.x;
  }

  LieValue lie_term() {
    LieValue t = lie_factor();
    while (accept('*')) {
      std::size_t at = pos_;
      LieValue f = lie_factor();
      if (!t.scalar && !f.scalar) {
        pos_ = at;
        fail("products of Lie elements are not Lie elements; use [x,y]");
      }
      if (t.scalar && f.scalar) {
        t.c *= f.c;
      } else if (t.scalar) {
        f.x *= t.c;
        t = f;
      } else {
        t.x *= f.c;
      }
    }
    return t;
  }

  LieValue lie_factor() {
    skip();
    LieValue v;
    if (at_digit()) {
      v.c = number();
    } else if (at_ident()) {
      v.scalar = false;
      v.x = LieElement::generator(gens_, identifier());
    } else if (accept('(')) {
      v = lie_expr();
      expect(')');
    } else if (accept('[')) {
      std::size_t at = pos_;
      LieValue a = lie_expr();
      expect(',');
      LieValue b = lie_expr();
      expect(']');
      if (a.scalar || b.scalar) {
        pos_ = at;
        fail("bracket of a scalar");
      }
      v.scalar = false;
      v.x = bracket(a.x, b.x);
    } else {
      fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'"
                            : "unexpected end of expression");
    }
    if (pos_ < s_.size() && s_[pos_] == '^') fail("powers are not allowed in lie sections");
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
  const GeneratorSet& gens_;
};

struct RawLine {
  int number;
  std::string text;  // comment stripped
};

struct RawSection {
  SectionKind kind;
  std::string name;
  int line;
  std::vector<RawLine> body;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int column_of(const std::string&, std::size_t pos) { return static_cast<int>(pos) + 1; }

std::vector<Generator> parse_generators(const RawLine& l, std::size_t start) {
  std::vector<Generator> out;
  const std::string& s = l.text;
  std::size_t pos = start;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t lead = item.find_first_not_of(" \t");
    std::size_t item_col = pos + (lead == std::string::npos ? 0 : lead);
    std::string t = trim(item);
    auto colon = t.find(':');
    if (t.empty() || colon == std::string::npos)
      throw ParseError("expected name:degree", l.number, column_of(s, item_col));
    std::string name = trim(t.substr(0, colon));
    std::string deg = trim(t.substr(colon + 1));
    if (!is_identifier(name))
      throw ParseError("bad generator name '" + name + "'", l.number, column_of(s, item_col));
    if (deg.empty() || deg.size() > 4 || deg.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad degree '" + deg + "'", l.number,
                       column_of(s, item_col + colon + 1));
    int d = std::stoi(deg);
    if (d < 1) throw ParseError("degree must be positive", l.number, column_of(s, item_col + colon + 1));
    out.push_back({name, d});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

ModelSection build_section(const RawSection& raw) {
  std::vector<Generator> gens;
  std::map<std::string, int> declared_at;
  struct DLine {
    const RawLine* line;
    std::string name;
    std::size_t expr_start;
  };
  std::vector<DLine> dlines;

  for (const auto& l : raw.body) {
    const std::string& s = l.text;
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_first_of(" \t", b);
    std::string keyword = s.substr(b, e == std::string::npos ? std::string::npos : e - b);
    if (keyword == "generators") {
      for (auto& g : parse_generators(l, b + keyword.size())) {
        if (declared_at.count(g.name))
          throw ParseError("generator '" + g.name + "' declared twice", l.number, 1);
        declared_at[g.name] = l.number;
        gens.push_back(g);
      }
    } else if (keyword == "d") {
      std::size_t eq = s.find('=', b);
      if (eq == std::string::npos) throw ParseError("expected '='", l.number, column_of(s, s.size()));
      std::string name = trim(s.substr(b + 1, eq - b - 1));
      if (!is_identifier(name))
        throw ParseError("expected a generator name after 'd'", l.number, column_of(s, b + 2));
      dlines.push_back({&l, name, eq + 1});
    } else {
      throw ParseError("unknown statement '" + keyword + "'", l.number, column_of(s, b));
    }
  }

  GeneratorSet gs(gens);
  ModelSection out;
  out.kind = raw.kind;
  out.name = raw.name;
  out.line = raw.line;
  std::map<std::string, int> defined;

  if (raw.kind == SectionKind::Algebra) {
    std::vector<Element> d(gs.size());
    for (const auto& dl : dlines) {
      auto i = gs.find(dl.name);
      if (!i) throw ParseError("unknown generator '" + dl.name + "'", dl.line->number, 1);
      if (defined.count(dl.name))
        throw ParseError("d " + dl.name + " assigned twice", dl.line->number, 1);
      defined[dl.name] = dl.line->number;
      ExprParser p(dl.line->text.substr(dl.expr_start), dl.line->number,
                   static_cast<int>(dl.expr_start) + 1, gs);
      Element e = p.algebra_expression();
      if (!e.is_zero()) {
        auto deg = e.homogeneous_degree();
        if (!deg)
          throw NonHomogeneousInput("line " + std::to_string(dl.line->number) + ": d " + dl.name +
                                    " is not homogeneous");
        if (*deg != gs.degree(*i) + 1)
          throw DegreeMismatch("line " + std::to_string(dl.line->number) + ": d " + dl.name +
                               " has degree " + std::to_string(*deg) + ", expected " +
                               std::to_string(gs.degree(*i) + 1));
      }
      d[*i] = std::move(e);
    }
    try {
      out.algebra = std::make_shared<const SullivanAlgebra>(gs, d);
    } catch (const DifferentialNotSquareZero& e) {
      throw DifferentialNotSquareZero("section " + raw.name + ": " + e.what());
    }
  } else {
    std::vector<LieElement> d(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) d[i] = LieElement(gs.degree(i) - 1);
    for (const auto& dl : dlines) {
      auto i = gs.find(dl.name);
      if (!i) throw ParseError("unknown generator '" + dl.name + "'", dl.line->number, 1);
      if (defined.count(dl.name))
        throw ParseError("d " + dl.name + " assigned twice", dl.line->number, 1);
      defined[dl.name] = dl.line->number;
      ExprParser p(dl.line->text.substr(dl.expr_start), dl.line->number,
                   static_cast<int>(dl.expr_start) + 1, gs);
      LieValue v = p.lie_expression();
      if (v.scalar) {
        if (sgn(v.c) != 0)
          throw DegreeMismatch("line " + std::to_string(dl.line->number) + ": d " + dl.name +
                               " is a nonzero scalar");
        continue;
      }
      if (!v.x.is_zero() && v.x.degree() != gs.degree(*i) - 1)
        throw DegreeMismatch("line " + std::to_string(dl.line->number) + ": d " + dl.name +
                             " has degree " + std::to_string(v.x.degree()) + ", expected " +
                             std::to_string(gs.degree(*i) - 1));
      if (!v.x.is_zero()) d[*i] = v.x;
    }
    try {
      out.lie = std::make_shared<const FreeDgl>(gs, d);
    } catch (const DifferentialNotSquareZero& e) {
      throw DifferentialNotSquareZero("section " + raw.name + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

const ModelSection& ModelFile::section(const std::optional<std::string>& name,
                                       std::optional<SectionKind> kind) const {
  for (const auto& s : sections) {
    if (name && s.name != *name) continue;
    if (kind && s.kind != *kind) continue;
    return s;
  }
  std::string what = kind ? (*kind == SectionKind::Lie ? "lie section" : "algebra section")
                          : "section";
  if (name) throw Error("no " + what + " named '" + *name + "'");
  throw Error("model has no " + what);
}

ModelFile parse_model(const std::string& text) {
  std::vector<RawSection> raw;
  std::set<std::string> names;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    std::size_t b = line.find_first_not_of(" \t");
    std::size_t e = line.find_first_of(" \t", b);
    std::string keyword = line.substr(b, e == std::string::npos ? std::string::npos : e - b);
    if (keyword == "algebra" || keyword == "lie") {
      std::string name = e == std::string::npos ? "" : trim(line.substr(e));
      if (!is_identifier(name))
        throw ParseError("expected a section name", number,
                         column_of(line, e == std::string::npos ? line.size() : e + 1));
      if (!names.insert(name).second)
        throw ParseError("section '" + name + "' defined twice", number, column_of(line, b));
      raw.push_back({keyword == "lie" ? SectionKind::Lie : SectionKind::Algebra, name, number, {}});
      continue;
    }
    if (raw.empty())
      throw ParseError("statement outside a section; start with 'algebra NAME' or 'lie NAME'",
                       number, column_of(line, b));
    raw.back().body.push_back({number, line});
  }
  ModelFile out;
  for (const auto& r : raw) out.sections.push_back(build_section(r));
  return out;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string print_model(const ModelFile& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : m.sections) {
    if (!first) os << "\n";
    first = false;
    const GeneratorSet& gs =
        s.kind == SectionKind::Algebra ? s.algebra->generators() : s.lie->generators();
    os << (s.kind == SectionKind::Algebra ? "algebra " : "lie ") << s.name << "\n";
    if (!gs.empty()) {
      os << "generators ";
      for (std::size_t i = 0; i < gs.size(); ++i) {
        os << (i ? ", " : "") << gs[i].name << ":" << gs[i].degree;
      }
      os << "\n";
    }
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (s.kind == SectionKind::Algebra) {
        const auto& d = s.algebra->differential_of(i);
        if (!d.is_zero()) os << "d " << gs[i].name << " = " << s.algebra->format(d) << "\n";
      } else {
        const auto& d = s.lie->boundary_of(i);
        if (!d.is_zero()) os << "d " << gs[i].name << " = " << s.lie->format(d) << "\n";
      }
    }
  }
  return os.str();
}

Element parse_element(const GeneratorSet& gens, const std::string& text) {
  ExprParser p(text, 1, 1, gens);
  return p.algebra_expression();
}

}  // namespace rht
