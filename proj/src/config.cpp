#include "mmdual/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mmdual/dual.hpp"

namespace mmdual {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "grid.dim", "grid.omega_shape", "grid.spacing", "grid.extension_factor",
      "grid.shape", "grid.omega_lo",
      "material.alpha", "material.beta", "material.easy_axis",
      "field.H", "field.H_file",
      "dual.K_margin",
      "solver.outer_max_iter", "solver.outer_tol", "solver.inner_max_rounds",
      "solver.inner_tol", "solver.exhaustive_t_cells", "solver.t_first", "solver.nonmonotone_window",
      "solver.brute_force_restarts", "solver.gap_tol", "solver.feasibility_tol",
      "oracle.corrupt_sign",
      "seed", "output_dir"};
  return keys;
}

json flatten(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  json flat = json::object();
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      for (const auto& [k2, v2] : v.items()) {
        if (v2.is_object())
          throw ConfigError("config: key '" + k + "." + k2 + "' nests deeper than two levels");
        const std::string key = k + "." + k2;
        if (flat.contains(key)) throw ConfigError("config: duplicate key '" + key + "'");
        flat[key] = v2;
      }
    } else {
      if (flat.contains(k)) throw ConfigError("config: duplicate key '" + k + "'");
      flat[k] = v;
    }
  }
  return flat;
}

template <class T>
T take(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

Vec3 take_vec3(const json& j, const std::string& key) {
  const auto v = take<std::vector<double>>(j, key);
  if (v.size() != 3) throw ConfigError("config key '" + key + "': expected 3 components");
  return {v[0], v[1], v[2]};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError("config: " + message);
}

void validate(const RunConfig& c) {
  require(c.dim >= 1 && c.dim <= 3, "grid.dim must be 1, 2 or 3");
  const std::size_t d = static_cast<std::size_t>(c.dim);
  require(c.omega_shape.size() == d, "grid.omega_shape must have grid.dim entries");
  for (std::size_t n : c.omega_shape) require(n >= 1, "grid.omega_shape entries must be >= 1");
  require(c.spacing.size() == d, "grid.spacing must have grid.dim entries");
  for (double h : c.spacing)
    require(std::isfinite(h) && h > 0.0, "grid.spacing entries must be > 0");
  require(std::isfinite(c.extension_factor) && c.extension_factor >= 1.0,
          "grid.extension_factor must be >= 1");
  if (c.shape) require(c.shape->size() == d, "grid.shape must have grid.dim entries");
  if (c.omega_lo) {
    require(c.shape.has_value(), "grid.omega_lo requires grid.shape");
    require(c.omega_lo->size() == d, "grid.omega_lo must have grid.dim entries");
  }
  require(std::isfinite(c.alpha) && c.alpha > 0.0, "material.alpha must be > 0");
  require(std::isfinite(c.beta) && c.beta > 0.0, "material.beta must be > 0");
  const double en = std::sqrt(dot3(c.easy_axis, c.easy_axis));
  require(std::abs(en - 1.0) <= 1e-12, "material.easy_axis must be a unit vector");
  for (double h : c.H) require(std::isfinite(h), "field.H must be finite");
  require(std::isfinite(c.K_margin) && c.K_margin > 0.0, "dual.K_margin must be > 0");
  require(c.solver.outer_max_iter >= 1, "solver.outer_max_iter must be >= 1");
  require(c.solver.outer_grad_tol > 0.0, "solver.outer_tol must be > 0");
  require(c.solver.inner_max_rounds >= 1, "solver.inner_max_rounds must be >= 1");
  require(c.solver.inner_rel_tol > 0.0, "solver.inner_tol must be > 0");
  require(c.solver.nonmonotone_window >= 1, "solver.nonmonotone_window must be >= 1");
  require(c.brute_force_restarts >= 1, "solver.brute_force_restarts must be >= 1");
  require(c.gap_tol > 0.0, "solver.gap_tol must be > 0");
  require(c.feasibility_tol > 0.0, "solver.feasibility_tol must be > 0");
}

}  // namespace

RunConfig parse_config(const json& raw, const std::filesystem::path& base_dir) {
  const json j = flatten(raw);
  for (const auto& [k, v] : j.items())
    if (!known_keys().contains(k)) throw ConfigError("config: unknown key '" + k + "'");

  RunConfig c;
  c.base_dir = base_dir;
  if (j.contains("grid.dim")) c.dim = take<int>(j, "grid.dim");
  if (j.contains("grid.omega_shape"))
    c.omega_shape = take<std::vector<std::size_t>>(j, "grid.omega_shape");
  else
    c.omega_shape.assign(static_cast<std::size_t>(std::max(c.dim, 1)), 4);
  if (j.contains("grid.spacing"))
    c.spacing = take<std::vector<double>>(j, "grid.spacing");
  else
    c.spacing.assign(static_cast<std::size_t>(std::max(c.dim, 1)), 1.0);
  if (j.contains("grid.extension_factor"))
    c.extension_factor = take<double>(j, "grid.extension_factor");
  if (j.contains("grid.shape")) c.shape = take<std::vector<std::size_t>>(j, "grid.shape");
  if (j.contains("grid.omega_lo"))
    c.omega_lo = take<std::vector<std::size_t>>(j, "grid.omega_lo");

  if (j.contains("material.alpha")) c.alpha = take<double>(j, "material.alpha");
  if (j.contains("material.beta")) c.beta = take<double>(j, "material.beta");
  if (j.contains("material.easy_axis")) c.easy_axis = take_vec3(j, "material.easy_axis");

  if (j.contains("field.H") && j.contains("field.H_file"))
    throw ConfigError("config: field.H and field.H_file are mutually exclusive");
  if (j.contains("field.H")) c.H = take_vec3(j, "field.H");
  if (j.contains("field.H_file")) c.H_file = take<std::string>(j, "field.H_file");

  if (j.contains("dual.K_margin")) c.K_margin = take<double>(j, "dual.K_margin");

  if (j.contains("solver.outer_max_iter"))
    c.solver.outer_max_iter = take<std::size_t>(j, "solver.outer_max_iter");
  if (j.contains("solver.outer_tol")) c.solver.outer_grad_tol = take<double>(j, "solver.outer_tol");
  if (j.contains("solver.inner_max_rounds"))
    c.solver.inner_max_rounds = take<std::size_t>(j, "solver.inner_max_rounds");
  if (j.contains("solver.inner_tol")) c.solver.inner_rel_tol = take<double>(j, "solver.inner_tol");
  if (j.contains("solver.exhaustive_t_cells"))
    c.solver.exhaustive_t_cells = take<std::size_t>(j, "solver.exhaustive_t_cells");
  if (j.contains("solver.t_first")) c.solver.t_first = take<bool>(j, "solver.t_first");
  if (j.contains("solver.nonmonotone_window"))
    c.solver.nonmonotone_window = take<std::size_t>(j, "solver.nonmonotone_window");
  if (j.contains("solver.brute_force_restarts"))
    c.brute_force_restarts = take<std::size_t>(j, "solver.brute_force_restarts");
  if (j.contains("solver.gap_tol")) c.gap_tol = take<double>(j, "solver.gap_tol");
  if (j.contains("solver.feasibility_tol"))
    c.feasibility_tol = take<double>(j, "solver.feasibility_tol");
  if (j.contains("oracle.corrupt_sign")) c.corrupt_sign = take<bool>(j, "oracle.corrupt_sign");

  if (j.contains("seed")) c.seed = take<unsigned long long>(j, "seed");
  if (j.contains("output_dir")) c.output_dir = take<std::string>(j, "output_dir");
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: parse error in '" + path.string() + "': " + e.what());
  }
  return parse_config(j, path.parent_path());
}

json config_to_json(const RunConfig& c) {
  json j = json::object();
  j["grid.dim"] = c.dim;
  j["grid.omega_shape"] = c.omega_shape;
  j["grid.spacing"] = c.spacing;
  j["grid.extension_factor"] = c.extension_factor;
  if (c.shape) j["grid.shape"] = *c.shape;
  if (c.omega_lo) j["grid.omega_lo"] = *c.omega_lo;
  j["material.alpha"] = c.alpha;
  j["material.beta"] = c.beta;
  j["material.easy_axis"] = c.easy_axis;
  if (c.H_file.empty())
    j["field.H"] = c.H;
  else
    j["field.H_file"] = c.H_file;
  j["dual.K_margin"] = c.K_margin;
  j["solver.outer_max_iter"] = c.solver.outer_max_iter;
  j["solver.outer_tol"] = c.solver.outer_grad_tol;
  j["solver.inner_max_rounds"] = c.solver.inner_max_rounds;
  j["solver.inner_tol"] = c.solver.inner_rel_tol;
  j["solver.exhaustive_t_cells"] = c.solver.exhaustive_t_cells;
  j["solver.t_first"] = c.solver.t_first;
  j["solver.nonmonotone_window"] = c.solver.nonmonotone_window;
  j["solver.brute_force_restarts"] = c.brute_force_restarts;
  j["solver.gap_tol"] = c.gap_tol;
  j["solver.feasibility_tol"] = c.feasibility_tol;
  j["oracle.corrupt_sign"] = c.corrupt_sign;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j;
}

Grid build_grid(const RunConfig& c) {
  if (!c.shape) return Grid::centered(c.dim, c.omega_shape, c.spacing, c.extension_factor);
  const std::size_t d = static_cast<std::size_t>(c.dim);
  std::vector<std::size_t> lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    if ((*c.shape)[a] < c.omega_shape[a])
      throw ConfigError("config: grid.shape must contain grid.omega_shape");
    lo[a] = c.omega_lo ? (*c.omega_lo)[a] : ((*c.shape)[a] - c.omega_shape[a]) / 2;
    hi[a] = lo[a] + c.omega_shape[a];
  }
  return Grid::make(c.dim, *c.shape, c.spacing, lo, hi, c.extension_factor);
}

namespace {

VectorField3 read_h_file(const Grid& g, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open field.H_file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("hx,hy,hz", 0) != 0)
    throw ConfigError("field.H_file: expected header 'hx,hy,hz'");
  VectorField3 h = VectorField3::zeros(g, Support::Omega);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= g.omega_cells())
      throw ConfigError("field.H_file: more rows than body cells");
    std::stringstream ss(line);
    std::string cell;
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ss, cell, ','))
        throw ConfigError("field.H_file: row " + std::to_string(row + 1) + " has fewer than 3 values");
      try {
        h.c[i][row] = std::stod(cell);
      } catch (const std::exception&) {
        throw ConfigError("field.H_file: bad number '" + cell + "'");
      }
    }
    ++row;
  }
  if (row != g.omega_cells())
    throw ConfigError("field.H_file: " + std::to_string(row) + " rows for " +
                      std::to_string(g.omega_cells()) + " body cells");
  return h;
}

}  // namespace

ModelParams build_params(const RunConfig& c, const Grid& g) {
  ModelParams p = make_params(g, c.alpha, c.beta, c.easy_axis, c.H);
  if (!c.H_file.empty()) {
    std::filesystem::path path = c.H_file;
    if (path.is_relative()) path = c.base_dir / path;
    p.H = read_h_file(g, path);
    p.validate(g);
  }
  p.feasibility_tol = c.feasibility_tol;
  apply_K(p, select_K(c.alpha, g, c.K_margin));
  return p;
}

}  // namespace mmdual
