#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rht/model_file.hpp"

namespace rht {

/// Key/value document with a fixed section order: inputs, results,
/// certificate, warnings. Rendering is deterministic.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& key, const std::string& value) { add(0, key, value); }
  void result(const std::string& key, const std::string& value) { add(1, key, value); }
  void certificate(const std::string& key, const std::string& value) { add(2, key, value); }
  void warn(const std::string& text) { warnings_.push_back(text); }

  const std::string& command() const { return command_; }
  /// First value stored under key in any section.
  std::optional<std::string> value(const std::string& key) const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::string text() const;

 private:
  void add(int section, const std::string& key, const std::string& value);

  std::string command_;
  std::vector<std::pair<std::string, std::string>> entries_[3];
  std::vector<std::string> warnings_;
};

struct CommandOptions {
  std::optional<int> max_degree;
  std::string format = "text";
  std::size_t backtrack_cap = 64;
  std::optional<std::string> section;
  std::optional<int> p;                 // sphere-map
  std::vector<std::string> polys;       // regular-seq
  std::vector<std::string> triple;      // massey: three expressions
  bool with_cstar = false;              // map-model
};

const std::vector<std::string>& command_names();

/// Runs one command on parsed model files. map-model and audit take two
/// files (X first); every other command takes one. Throws Error on bad
/// input and InvariantViolation when a computed certificate fails.
Report run_command(const std::string& name, const CommandOptions& options,
                   const std::vector<ModelFile>& files);

}  // namespace rht
