#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mmdual/commands.hpp"
#include "mmdual/config.hpp"

namespace {

mmdual::RunConfig load(const std::string& path) {
  if (path.empty()) return mmdual::parse_config(nlohmann::json::object());
  return mmdual::load_config(path);
}

int report(const mmdual::CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << r.report.dump(2) << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual bounds and certificates for discrete micromagnetic energies"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::optional<unsigned long long> seed;
  std::size_t gap_samples = 100;
  std::size_t oracle_samples = 20;
  std::string fields_in;
  bool corrupt_sign = false;

  auto* solve = app.add_subcommand("solve", "maximize the dual, recover the primal, certify");
  auto* evaluate = app.add_subcommand("evaluate", "energies and residuals of a stored fields.csv");
  auto* gap = app.add_subcommand("gap-check", "sample weak duality on random admissible pairs");
  auto* oracle = app.add_subcommand("oracle-verify", "check conjugates against the numeric oracle");

  for (auto* sub : {solve, evaluate, gap, oracle}) {
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--output-dir", output_dir, "directory for artifacts");
    sub->add_option("--seed", seed, "random seed (overrides the config)");
  }
  evaluate->add_option("--fields", fields_in, "fields.csv to evaluate")
      ->required()
      ->check(CLI::ExistingFile);
  gap->add_option("--samples", gap_samples, "number of primal and dual samples")
                 ->capture_default_str();
  oracle->add_option("--samples", oracle_samples, "number of random dual points")
      ->capture_default_str();
  oracle->add_flag("--corrupt-sign", corrupt_sign,
                   "debug: flip the well sign in G1* (the check must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors map to the error code.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    mmdual::RunConfig c = load(config_path);
    if (seed) c.seed = *seed;
    if (!output_dir.empty()) c.output_dir = output_dir;
    if (corrupt_sign) c.corrupt_sign = true;

    if (solve->parsed()) return report(mmdual::cmd_solve(c, c.output_dir));
    if (evaluate->parsed()) return report(mmdual::cmd_evaluate(c, fields_in));
    if (gap->parsed()) return report(mmdual::cmd_gap_check(c, gap_samples, c.seed));
    if (oracle->parsed()) return report(mmdual::cmd_oracle_verify(c, oracle_samples, c.seed));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mmdual::kError;
  }
  return mmdual::kError;
}
