#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "mmdual/config.hpp"

namespace mmdual {

enum ExitCode : int { kCertified = 0, kError = 1, kUncertified = 2 };

struct CommandResult {
  int exit_code = kError;
  nlohmann::json report;
  std::vector<std::string> warnings;
};

/// Solves, writes report.json and fields.csv into out_dir.
CommandResult cmd_solve(const RunConfig& c, const std::filesystem::path& out_dir);

/// Energies and constraint residuals of a stored state; no solve.
CommandResult cmd_evaluate(const RunConfig& c, const std::filesystem::path& fields_in);

/// Weak-duality sampling over random feasible primal and admissible dual
/// states.
CommandResult cmd_gap_check(const RunConfig& c, std::size_t samples,
                            unsigned long long seed);

/// Closed-form conjugates against numeric_sup on random dual points.
CommandResult cmd_oracle_verify(const RunConfig& c, std::size_t samples,
                                unsigned long long seed);

/// Random unit m (spherical angles), t uniform in [0, 1], f = stray field.
PrimalState sample_primal_state(const Grid& g, std::mt19937_64& rng);

/// Random multipliers with lambda3 > -K + margin * K. With `positive` the
/// lambda3 values are drawn above zero, which keeps lambda in A2. z* and t
/// are randomized and z* is boundary-projected.
DualState sample_dual_state(const Grid& g, const ModelParams& p, std::mt19937_64& rng,
                            bool positive, double margin = 0.05);

}  // namespace mmdual
