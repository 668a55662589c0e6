#pragma once

// Random fields and small instances shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mmdual/dual.hpp"
#include "mmdual/grid.hpp"
#include "mmdual/primal.hpp"

namespace mmdual::testing {

inline const Vec3 kTiltedAxis{0.0, 0.6, 0.8};

struct Instance {
  Grid g;
  ModelParams p;
};

inline Instance make_instance(int dim, std::vector<std::size_t> shape, std::vector<double> h,
                              Vec3 H, double alpha = 1.0, double beta = 1.0,
                              Vec3 e = kTiltedAxis) {
  Grid g = Grid::centered(dim, shape, h);
  ModelParams p = make_params(g, alpha, beta, e, H);
  apply_K(p, select_K(alpha, g, 0.1));
  return {g, p};
}

inline VectorField3 random_field(const Grid& g, Support s, std::mt19937_64& rng,
                                 double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  VectorField3 f = VectorField3::zeros(g, s);
  for (auto& c : f.c)
    for (double& v : c) v = n(rng);
  return f;
}

inline ScalarField random_scalar(const Grid& g, Support s, std::mt19937_64& rng,
                                 double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ScalarField f = ScalarField::zeros(g, s);
  for (double& v : f.v) v = u(rng);
  return f;
}

/// lambda3 uniform in [l3_lo, l3_hi], z* boundary-projected.
inline DualState random_dual(const Grid& g, std::mt19937_64& rng, double l3_lo,
                             double l3_hi) {
  std::normal_distribution<double> n(0.0, 1.0);
  DualState d = DualState::initial(g, 0.0);
  d.lambda1 = random_field(g, Support::Box, rng);
  for (double& v : d.lambda2.v) v = n(rng);
  d.lambda3 = random_scalar(g, Support::Omega, rng, l3_lo, l3_hi);
  d.t = random_scalar(g, Support::Omega, rng, 0.0, 1.0);
  for (auto& row : d.zstar.rows)
    for (int a = 0; a < g.dim(); ++a)
      for (double& v : row.c[a]) v = n(rng);
  for (double& v : d.zstar.mean) v = n(rng);
  d.zstar = project_zstar_boundary(g, d.zstar, d.lambda2);
  return d;
}

inline PrimalState random_feasible_primal(const Grid& g, std::mt19937_64& rng) {
  const VectorField3 m = project_unit_sphere(random_field(g, Support::Omega, rng));
  return {m, stray_field(g, m), random_scalar(g, Support::Omega, rng, 0.0, 1.0)};
}

inline double rel_dev(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
}

}  // namespace mmdual::testing
