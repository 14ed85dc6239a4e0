#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/free_dgl.hpp"
#include "rht/sullivan.hpp"

namespace rht {

// Plain-text presentations. A file is a list of sections:
//
//   # comment
//   algebra Y
//   generators x1:4, x2:4, y:7
//   d y = x1*x2
//
//   lie L
//   generators a:3, b:7
//   d b = 1/2*[a,a]
//
// Expressions use rationals (3, -1/2), generator names, *, +, -, ^ and
// parentheses; [x,y] brackets are only allowed in lie sections. Generators
// without a `d` line are closed.

enum class SectionKind { Algebra, Lie };

struct ModelSection {
  SectionKind kind = SectionKind::Algebra;
  std::string name;
  int line = 0;
  SullivanPtr algebra;  // kind == Algebra
  FreeDglPtr lie;       // kind == Lie
};

struct ModelFile {
  std::vector<ModelSection> sections;

  /// The named section, or the first one of the given kind when no name is
  /// given. Throws Error when there is none.
  const ModelSection& section(const std::optional<std::string>& name,
                              std::optional<SectionKind> kind = std::nullopt) const;
};

/// Throws ParseError (with line and column) on syntax errors, DegreeMismatch
/// when a differential has the wrong degree and DifferentialNotSquareZero
/// naming the offending generator.
ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

/// Canonical text; parse_model(print_model(m)) reproduces m.
std::string print_model(const ModelFile& m);

/// A single algebra expression over `gens` (column numbers refer to `text`).
Element parse_element(const GeneratorSet& gens, const std::string& text);

}  // namespace rht
