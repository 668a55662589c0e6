#include "mmdual/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace mmdual {

namespace {

constexpr const char* kHeader = "ix,iy,iz,x,y,z,mx,my,mz,fx,fy,fz,t,in_omega";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_fields_csv(const std::filesystem::path& path, const Grid& g,
                      const PrimalState& s) {
  require_shape(g, s.m, Support::Omega, "write_fields_csv: m");
  require_shape(g, s.f, Support::Box, "write_fields_csv: f");
  require_shape(g, s.t, Support::Omega, "write_fields_csv: t");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << kHeader << '\n';
  for (std::size_t b = 0; b < g.box_cells(); ++b) {
    const Index3 c = g.box_coords(b);
    const auto x = g.cell_center(b);
    const std::int64_t o = g.box_to_omega(b);
    Vec3 m{0.0, 0.0, 0.0};
    double t = 0.0;
    if (o >= 0) {
      m = s.m.at(static_cast<std::size_t>(o));
      t = s.t.v[static_cast<std::size_t>(o)];
    }
    const Vec3 f = s.f.at(b);
    out << c[0] << ',' << c[1] << ',' << c[2];
    for (double v : {x[0], x[1], x[2], m[0], m[1], m[2], f[0], f[1], f[2], t})
      out << ',' << fmt(v);
    out << ',' << (o >= 0 ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

PrimalState read_fields_csv(const std::filesystem::path& path, const Grid& g) {
  std::ifstream in(path);
  if (!in) throw FieldsFormatError("cannot open fields file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw FieldsFormatError("fields file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw FieldsFormatError("fields file: unexpected header '" + line + "'");

  PrimalState s{VectorField3::zeros(g, Support::Omega), VectorField3::zeros(g, Support::Box),
                ScalarField::zeros(g, Support::Omega)};
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (row >= g.box_cells())
      throw FieldsFormatError("fields file has more rows than the grid has cells (" +
                              std::to_string(g.box_cells()) + ")");
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw FieldsFormatError("fields file row " + std::to_string(row + 1) +
                                ": bad value '" + cell + "'");
      }
    }
    if (v.size() != 14)
      throw FieldsFormatError("fields file row " + std::to_string(row + 1) + ": expected 14 columns");
    const Index3 c = g.box_coords(row);
    for (int a = 0; a < 3; ++a)
      if (v[a] != static_cast<double>(c[a]))
        throw FieldsFormatError("fields file row " + std::to_string(row + 1) +
                                ": cell index does not match the grid");
    const std::int64_t o = g.box_to_omega(row);
    if ((v[13] != 0.0) != (o >= 0))
      throw FieldsFormatError("fields file row " + std::to_string(row + 1) +
                              ": in_omega does not match the grid");
    s.f.set(row, {v[9], v[10], v[11]});
    if (o >= 0) {
      s.m.set(static_cast<std::size_t>(o), {v[6], v[7], v[8]});
      s.t.v[static_cast<std::size_t>(o)] = v[12];
    }
    ++row;
  }
  if (row != g.box_cells())
    throw FieldsFormatError("fields file has " + std::to_string(row) + " rows, grid has " +
                            std::to_string(g.box_cells()) + " cells");
  return s;
}

nlohmann::json to_json(const EnergyReport& e) {
  return {{"exchange", e.exchange},
          {"anisotropy", e.anisotropy},
          {"zeeman", e.zeeman},
          {"magnetostatic", e.magnetostatic},
          {"total", e.total},
          {"shifted_g0", e.shifted_g0},
          {"shifted_g1", e.shifted_g1},
          {"shifted_g2", e.shifted_g2},
          {"split_consistent", e.split_consistent}};
}

nlohmann::json to_json(const ConstraintResiduals& r) {
  return {{"r0_unit_length", r.r0}, {"r1_divergence", r.r1}, {"r2_curl", r.r2}};
}

nlohmann::json to_json(const Certificate& c) {
  return {{"zz_hessian_pd", c.zz_hessian_pd},
          {"zz_min_eigenvalue", c.zz_min_eigenvalue},
          {"pointwise_det_positive", c.pointwise_det_positive},
          {"min_pointwise_det", c.min_pointwise_det},
          {"degenerate", c.degenerate},
          {"global_checked", c.global_checked},
          {"global_positive", c.global_positive},
          {"global_min_eigenvalue", c.global_min_eigenvalue},
          {"stationary", c.stationary},
          {"first_order_residual", c.first_order_residual},
          {"passed", c.passed}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace mmdual
