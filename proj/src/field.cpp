#include "mmdual/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mmdual/kernels.hpp"

namespace mmdual {

namespace {

const char* support_name(Support s) {
  return s == Support::Box ? "box" : "Omega";
}

void check_same(std::size_t a, std::size_t b, Support sa, Support sb) {
  if (a != b || sa != sb)
    throw std::invalid_argument("field arithmetic: mismatched fields");
}

}  // namespace

void require_shape(const Grid& g, const ScalarField& f, Support s,
                   const char* what) {
  if (f.support != s || f.v.size() != cell_count(g, s))
    throw std::invalid_argument(std::string(what) +
                                ": expected a scalar field on the " +
                                support_name(s) + " of this grid");
}

void require_shape(const Grid& g, const VectorField3& f, Support s,
                   const char* what) {
  const std::size_t n = cell_count(g, s);
  if (f.support != s || f.c[0].size() != n || f.c[1].size() != n ||
      f.c[2].size() != n)
    throw std::invalid_argument(std::string(what) +
                                ": expected a vector field on the " +
                                support_name(s) + " of this grid");
}

void require_finite(const ScalarField& f, const char* what) {
  for (double x : f.v)
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": non-finite value");
}

void require_finite(const VectorField3& f, const char* what) {
  for (const auto& comp : f.c)
    for (double x : comp)
      if (!std::isfinite(x))
        throw std::invalid_argument(std::string(what) + ": non-finite value");
}

double inner(const Grid& g, const ScalarField& a, const ScalarField& b) {
  check_same(a.size(), b.size(), a.support, b.support);
  return g.cell_volume() * kernels::dot(a.v, b.v);
}

double inner(const Grid& g, const VectorField3& a, const VectorField3& b) {
  check_same(a.size(), b.size(), a.support, b.support);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += kernels::dot(a.c[k], b.c[k]);
  return g.cell_volume() * s;
}

double norm(const Grid& g, const ScalarField& a) {
  return std::sqrt(inner(g, a, a));
}
double norm(const Grid& g, const VectorField3& a) {
  return std::sqrt(inner(g, a, a));
}

double integral(const Grid& g, const ScalarField& a) {
  double s = 0.0;
  for (double x : a.v) s += x;
  return g.cell_volume() * s;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  check_same(a.size(), b.size(), a.support, b.support);
  ScalarField r = a;
  kernels::axpy(1.0, b.v, r.v);
  return r;
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  check_same(a.size(), b.size(), a.support, b.support);
  ScalarField r = a;
  kernels::axpy(-1.0, b.v, r.v);
  return r;
}
ScalarField operator*(double s, const ScalarField& a) {
  ScalarField r = a;
  for (double& x : r.v) x *= s;
  return r;
}
VectorField3 operator+(const VectorField3& a, const VectorField3& b) {
  check_same(a.size(), b.size(), a.support, b.support);
  VectorField3 r = a;
  for (int k = 0; k < 3; ++k) kernels::axpy(1.0, b.c[k], r.c[k]);
  return r;
}
VectorField3 operator-(const VectorField3& a, const VectorField3& b) {
  check_same(a.size(), b.size(), a.support, b.support);
  VectorField3 r = a;
  for (int k = 0; k < 3; ++k) kernels::axpy(-1.0, b.c[k], r.c[k]);
  return r;
}
VectorField3 operator*(double s, const VectorField3& a) {
  VectorField3 r = a;
  for (auto& comp : r.c)
    for (double& x : comp) x *= s;
  return r;
}

VectorField3 extend_by_zero(const Grid& g, const VectorField3& f) {
  require_shape(g, f, Support::Omega, "extend_by_zero");
  VectorField3 r = VectorField3::zeros(g, Support::Box);
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    for (int k = 0; k < 3; ++k) r.c[k][g.omega_to_box(o)] = f.c[k][o];
  return r;
}

ScalarField extend_by_zero(const Grid& g, const ScalarField& f) {
  require_shape(g, f, Support::Omega, "extend_by_zero");
  ScalarField r = ScalarField::zeros(g, Support::Box);
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    r.v[g.omega_to_box(o)] = f.v[o];
  return r;
}

VectorField3 restrict_to_omega(const Grid& g, const VectorField3& f) {
  require_shape(g, f, Support::Box, "restrict_to_omega");
  VectorField3 r = VectorField3::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    for (int k = 0; k < 3; ++k) r.c[k][o] = f.c[k][g.omega_to_box(o)];
  return r;
}

ScalarField restrict_to_omega(const Grid& g, const ScalarField& f) {
  require_shape(g, f, Support::Box, "restrict_to_omega");
  ScalarField r = ScalarField::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    r.v[o] = f.v[g.omega_to_box(o)];
  return r;
}

}  // namespace mmdual
