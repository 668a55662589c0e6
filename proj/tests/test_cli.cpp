#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "mmdual/commands.hpp"
#include "mmdual/config.hpp"
#include "mmdual/io.hpp"

using namespace mmdual;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = MMDUAL_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mmdual_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + MMDUAL_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = load_config(kConfigs / "wire_1d.json");
  CHECK(c.dim == 1);
  CHECK(c.omega_shape == std::vector<std::size_t>{16});
  CHECK(c.H[2] == 1.5);
  CHECK(c.seed == 7);

  const nlohmann::json flat = config_to_json(c);
  const RunConfig again = parse_config(flat, c.base_dir);
  CHECK(config_to_json(again) == flat);

  const nlohmann::json dotted = {{"grid.dim", 2}, {"grid.omega_shape", {2, 2}},
                                 {"grid.spacing", {1.0, 0.5}}, {"material.beta", 0.3}};
  const RunConfig d = parse_config(dotted);
  CHECK(d.dim == 2);
  CHECK(d.spacing[1] == 0.5);
  CHECK(d.beta == 0.3);

  CHECK_THROWS_AS(parse_config({{"grid.dmi", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"material", {{"alpha", "one"}}}}), ConfigError);
  try {
    parse_config({{"material.alpha", -1.0}});
    FAIL("alpha <= 0 accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
}

TEST_CASE("fields round trip") {
  const RunConfig c = load_config(kConfigs / "plate_2x2.json");
  const fs::path dir = scratch("roundtrip");
  const CommandResult solved = cmd_solve(c, dir);
  REQUIRE(solved.exit_code != kError);
  const CommandResult ev = cmd_evaluate(c, dir / "fields.csv");
  CHECK(ev.exit_code == 0);
  for (const char* k : {"exchange", "anisotropy", "zeeman", "magnetostatic", "total"}) {
    const double a = solved.report["energy"][k];
    const double b = ev.report["energy"][k];
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
  for (const char* k : {"r0_unit_length", "r1_divergence", "r2_curl"}) {
    const double a = solved.report["residuals"][k];
    const double b = ev.report["residuals"][k];
    CHECK(std::abs(a - b) <= 1e-12);
  }

  const Grid g = build_grid(c);
  std::ofstream(dir / "short.csv") << "ix,iy,iz,x,y,z,mx,my,mz,fx,fy,fz,t,in_omega\n0,0,0,0,0,0,1,0,0,0,0,0,0,1\n";
  CHECK_THROWS_AS(read_fields_csv(dir / "short.csv", g), FieldsFormatError);
}

TEST_CASE("evaluate flags an off-sphere state") {
  const RunConfig c = load_config(kConfigs / "tiny_pair.json");
  const Grid g = build_grid(c);
  const fs::path dir = scratch("evaluate");
  PrimalState s{VectorField3::constant(g, Support::Omega, {0.0, 0.0, 2.0}),
                VectorField3::zeros(g, Support::Box), ScalarField::zeros(g, Support::Omega)};
  write_fields_csv(dir / "fields.csv", g, s);
  const CommandResult r = cmd_evaluate(c, dir / "fields.csv");
  CHECK(double(r.report["residuals"]["r0_unit_length"]) == doctest::Approx(1.0));
  CHECK(r.report["flags"]["r0_exceeds_tol"] == true);

  RunConfig free = c;
  free.H = {0.0, 0.0, 0.0};
  s.m = VectorField3::constant(g, Support::Omega, free.easy_axis);
  write_fields_csv(dir / "aligned.csv", g, s);
  const CommandResult aligned = cmd_evaluate(free, dir / "aligned.csv");
  CHECK(double(aligned.report["two_well_anisotropy"]) == doctest::Approx(0.0).scale(1e-12));
  CHECK(aligned.report["flags"]["r0_exceeds_tol"] == false);
}

TEST_CASE("solve is deterministic and certifies the strong field cell") {
  const fs::path a = scratch("solve");
  const std::string cfg = (kConfigs / "strong_field_cell.json").string();
  const std::string args = "solve --config \"" + cfg + "\" --output-dir \"" + a.string() + "\"";
  CHECK(run(args, a / "log") == 0);
  const auto ra = nlohmann::json::parse(slurp(a / "report.json"));
  const std::string fa = slurp(a / "fields.csv");
  CHECK(run(args, a / "log") == 0);
  const auto rb = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK(without_timing(ra).dump() == without_timing(rb).dump());
  CHECK(fa == slurp(a / "fields.csv"));
  CHECK(std::abs(double(ra["relative_gap"])) <= 1e-6);
  CHECK(ra["certificate"]["passed"] == true);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  std::ofstream(dir / "bad.json") << R"({"material": {"alpha": 0}})";
  CHECK(run("solve --config \"" + (dir / "bad.json").string() + "\" --output-dir \"" +
                dir.string() + "\"",
            dir / "log") == 1);
  CHECK(slurp(dir / "log").find("alpha") != std::string::npos);

  CHECK(run("solve --config \"" + (dir / "missing.json").string() + "\"", dir / "log") == 1);

  const std::string tiny = (kConfigs / "tiny_pair.json").string();
  CHECK(run("oracle-verify --config \"" + tiny + "\" --output-dir \"" + dir.string() + "\"",
            dir / "log") == 0);
  CHECK(run("oracle-verify --corrupt-sign --config \"" + tiny + "\" --output-dir \"" +
                dir.string() + "\"",
            dir / "log") == 1);
}

TEST_CASE("gap check") {
  const RunConfig c = load_config(kConfigs / "tiny_pair.json");
  const CommandResult empty = cmd_gap_check(c, 0, 1);
  CHECK(empty.exit_code == 0);
  CHECK_FALSE(empty.warnings.empty());

  const CommandResult x = cmd_gap_check(c, 20, 9);
  const CommandResult y = cmd_gap_check(c, 20, 9);
  CHECK(x.exit_code == 0);
  CHECK(x.report["min_gap"] == y.report["min_gap"]);
}

TEST_CASE("oracle verify lists every conjugate") {
  const RunConfig c = load_config(kConfigs / "tiny_pair.json");
  const CommandResult r = cmd_oracle_verify(c, 5, 2);
  CHECK(r.exit_code == 0);
  for (const char* k : {"ftilde_star", "g1_star", "g2_star"})
    CHECK(double(r.report["max_relative_deviation"][k]) <= 1e-4);
}
