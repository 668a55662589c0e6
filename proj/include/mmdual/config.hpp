#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mmdual/grid.hpp"
#include "mmdual/primal.hpp"
#include "mmdual/solver.hpp"

namespace mmdual {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Run configuration. On disk it is a JSON object with dotted keys
/// ("grid.dim": 1) or the equivalent one-level nesting ({"grid": {"dim": 1}}).
struct RunConfig {
  int dim = 1;
  std::vector<std::size_t> omega_shape{4};
  std::vector<double> spacing{1.0};
  double extension_factor = 2.0;
  /// Explicit box shape; the body is centred unless omega_lo is given.
  std::optional<std::vector<std::size_t>> shape;
  std::optional<std::vector<std::size_t>> omega_lo;

  double alpha = 1.0;
  double beta = 1.0;
  Vec3 easy_axis{0.0, 0.0, 1.0};

  Vec3 H{0.0, 0.0, 0.0};
  /// Per-cell applied field: CSV with header hx,hy,hz and one row per body
  /// cell in row-major order. Relative paths resolve against the config file.
  std::string H_file;

  double K_margin = 0.1;

  SolverOptions solver;
  std::size_t brute_force_restarts = 100;
  double gap_tol = 1e-6;           // relative, for exit status of solve
  double feasibility_tol = 1e-6;

  unsigned long long seed = 1;
  std::string output_dir = "out";
  bool corrupt_sign = false;  // oracle-verify sensitivity switch

  std::filesystem::path base_dir;  // directory of the config file
};

RunConfig parse_config(const nlohmann::json& j,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Flat dotted-key form of every field (H_file and optional keys included
/// when set).
nlohmann::json config_to_json(const RunConfig& c);

Grid build_grid(const RunConfig& c);
/// Model parameters with K selected from the grid and K_margin.
ModelParams build_params(const RunConfig& c, const Grid& g);

}  // namespace mmdual
