#pragma once

#include <filesystem>
#include <stdexcept>

#include "json.hpp"

#include "mmdual/grid.hpp"
#include "mmdual/primal.hpp"
#include "mmdual/solver.hpp"

namespace mmdual {

class FieldsFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One row per box cell in row-major order:
/// ix,iy,iz,x,y,z,mx,my,mz,fx,fy,fz,t,in_omega. Cells outside the body
/// carry m = 0 and t = 0. Values are written with 17 significant digits.
void write_fields_csv(const std::filesystem::path& path, const Grid& g,
                      const PrimalState& s);

/// Inverse of write_fields_csv; throws FieldsFormatError when the file does
/// not match the grid.
PrimalState read_fields_csv(const std::filesystem::path& path, const Grid& g);

nlohmann::json to_json(const EnergyReport& e);
nlohmann::json to_json(const ConstraintResiduals& r);
nlohmann::json to_json(const Certificate& c);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace mmdual
