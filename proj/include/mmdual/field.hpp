#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mmdual/grid.hpp"

namespace mmdual {

/// Which cells a field is stored on: the whole box or the body only.
enum class Support { Box, Omega };

inline std::size_t cell_count(const Grid& g, Support s) {
  return s == Support::Box ? g.box_cells() : g.omega_cells();
}

struct ScalarField {
  Support support = Support::Box;
  std::vector<double> v;

  static ScalarField zeros(const Grid& g, Support s) {
    return {s, std::vector<double>(cell_count(g, s), 0.0)};
  }
  static ScalarField constant(const Grid& g, Support s, double c) {
    return {s, std::vector<double>(cell_count(g, s), c)};
  }
  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
};

/// Three components per cell regardless of the spatial dimension, stored
/// component-major.
struct VectorField3 {
  Support support = Support::Box;
  std::array<std::vector<double>, 3> c;

  static VectorField3 zeros(const Grid& g, Support s) {
    const std::size_t n = cell_count(g, s);
    return {s, {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)}};
  }
  static VectorField3 constant(const Grid& g, Support s,
                               const std::array<double, 3>& value) {
    const std::size_t n = cell_count(g, s);
    return {s, {std::vector<double>(n, value[0]),
                std::vector<double>(n, value[1]),
                std::vector<double>(n, value[2])}};
  }
  std::size_t size() const { return c[0].size(); }
  std::array<double, 3> at(std::size_t i) const {
    return {c[0][i], c[1][i], c[2][i]};
  }
  void set(std::size_t i, const std::array<double, 3>& x) {
    c[0][i] = x[0];
    c[1][i] = x[1];
    c[2][i] = x[2];
  }
};

// Throws std::invalid_argument when the field does not match the grid.
void require_shape(const Grid& g, const ScalarField& f, Support s,
                   const char* what);
void require_shape(const Grid& g, const VectorField3& f, Support s,
                   const char* what);
void require_finite(const ScalarField& f, const char* what);
void require_finite(const VectorField3& f, const char* what);

/// Cell-volume weighted inner products (midpoint quadrature).
double inner(const Grid& g, const ScalarField& a, const ScalarField& b);
double inner(const Grid& g, const VectorField3& a, const VectorField3& b);
double norm(const Grid& g, const ScalarField& a);
double norm(const Grid& g, const VectorField3& a);
double integral(const Grid& g, const ScalarField& a);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField3 operator+(const VectorField3& a, const VectorField3& b);
VectorField3 operator-(const VectorField3& a, const VectorField3& b);
VectorField3 operator*(double s, const VectorField3& a);

/// Body field extended by zero to the box (multiplication by chi_Omega).
VectorField3 extend_by_zero(const Grid& g, const VectorField3& omega_field);
ScalarField extend_by_zero(const Grid& g, const ScalarField& omega_field);
VectorField3 restrict_to_omega(const Grid& g, const VectorField3& box_field);
ScalarField restrict_to_omega(const Grid& g, const ScalarField& box_field);

}  // namespace mmdual
