#include <CLI11.hpp>

#include <iostream>

#include "rht/cli.hpp"
#include "rht/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rht: exact computations in rational homotopy theory"};
  std::string command;
  std::vector<std::string> files;
  rht::CommandOptions opts;
  int max_degree = -1;
  int p = 0;

  app.add_option("command", command, "one of: check, cohomology, minimal-model, bigraded-model, "
                                     "formality, massey, regular-seq, cstar, map-model, "
                                     "sphere-map, audit")
      ->required()
      ->check(CLI::IsMember(rht::command_names()));
  app.add_option("files", files, "model files (map-model and audit take X then Y)")->required();
  auto* max_opt = app.add_option("--max-degree", max_degree, "degree bound")->check(CLI::NonNegativeNumber);
  app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text"}));
  app.add_option("--backtrack-cap", opts.backtrack_cap, "alternatives tried by the formality search");
  app.add_option("--section", opts.section, "section name inside the model file");
  auto* p_opt = app.add_option("--p", p, "sphere dimension for sphere-map")->check(CLI::PositiveNumber);
  app.add_option("--poly", opts.polys, "sequence element for regular-seq (repeatable)");
  app.add_option("--class", opts.triple, "cocycle for massey (give three)");
  app.add_flag("--cstar", opts.with_cstar, "map-model: also print the Sullivan model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*max_opt) opts.max_degree = max_degree;
  if (*p_opt) opts.p = p;

  try {
    std::vector<rht::ModelFile> models;
    for (const auto& f : files) models.push_back(rht::load_model(f));
    std::cout << rht::run_command(command, opts, models).text();
    return 0;
  } catch (const rht::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rht::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
