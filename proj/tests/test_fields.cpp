#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "mmdual/field.hpp"
#include "mmdual/grid.hpp"
#include "mmdual/operators.hpp"

using namespace mmdual;

namespace {

ScalarField random_scalar(const Grid& g, Support s, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ScalarField f = ScalarField::zeros(g, s);
  for (double& v : f.v) v = n(rng);
  return f;
}

VectorField3 random_vector(const Grid& g, Support s, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  VectorField3 f = VectorField3::zeros(g, s);
  for (auto& c : f.c)
    for (double& v : c) v = n(rng);
  return f;
}

// Integers scaled by 2^-6: sums and differences stay exact.
ScalarField dyadic_scalar(const Grid& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(-4096, 4096);
  ScalarField f = ScalarField::zeros(g, Support::Box);
  for (double& v : f.v) v = std::ldexp(static_cast<double>(n(rng)), -6);
  return f;
}

double max_abs(const VectorField3& f) {
  double m = 0.0;
  for (const auto& c : f.c)
    for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Grid> sample_grids() {
  return {Grid::centered(1, {5}, {0.7}), Grid::centered(2, {3, 2}, {0.5, 1.3}),
          Grid::centered(3, {2, 3, 2}, {1.0, 0.8, 1.1}, 1.5)};
}

}  // namespace

TEST_CASE("grid construction examples") {
  const Grid a = Grid::make(1, {4}, {1.0}, {1}, {3});
  CHECK(a.box_cells() == 4);
  CHECK(a.omega_cells() == 2);
  CHECK_FALSE(a.in_omega(0));
  CHECK(a.in_omega(1));
  CHECK(a.in_omega(2));

  const Grid b = Grid::make(2, {3, 3}, {1.0, 1.0}, {0, 0}, {3, 3});
  CHECK(b.box_cells() == 9);
  CHECK(b.omega_cells() == 9);
  CHECK(std::all_of(b.omega_mask().begin(), b.omega_mask().end(), [](auto m) { return m == 1; }));

  // A lone cube cell has six faces.
  const Grid c = Grid::make(3, {2, 2, 2}, {1.0, 1.0, 1.0}, {0, 0, 0}, {1, 1, 1});
  CHECK(c.boundary_faces().size() == 6);
  for (const auto& f : c.boundary_faces()) CHECK(f.omega_cell == 0);

  CHECK_THROWS_AS(Grid::make(1, {4}, {1.0}, {2}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(1, {4}, {1.0}, {0}, {4}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(1, {4}, {1.0}, {0}, {5}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::centered(2, {2}, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("centered grid layout and ordering") {
  const Grid g = Grid::centered(2, {2, 3}, {1.0, 0.5}, 2.0);
  CHECK(g.shape()[0] == 4);
  CHECK(g.shape()[1] == 6);
  CHECK(g.omega_lo()[0] == 1);
  CHECK(g.omega_lo()[1] == 1);
  CHECK(g.cell_volume() == 0.5);
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    CHECK(g.box_to_omega(g.omega_to_box(o)) == static_cast<std::int64_t>(o));
  for (std::size_t b = 0; b < g.box_cells(); ++b) CHECK(g.box_index(g.box_coords(b)) == b);
}

TEST_CASE("field utilities") {
  const Grid g = Grid::centered(1, {3}, {0.5});
  std::mt19937_64 rng(3);
  const VectorField3 m = random_vector(g, Support::Omega, rng);
  const VectorField3 back = restrict_to_omega(g, extend_by_zero(g, m));
  for (int i = 0; i < 3; ++i) CHECK(back.c[i] == m.c[i]);
  CHECK(inner(g, m, m) == doctest::Approx(0.5 * (
      [&] { double s = 0; for (auto& c : m.c) for (double v : c) s += v * v; return s; }())));
  ScalarField bad = ScalarField::constant(g, Support::Omega, 1.0);
  bad.v[1] = std::nan("");
  CHECK_THROWS_AS(require_finite(bad, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(require_shape(g, bad, Support::Box, "bad"), std::invalid_argument);
}

TEST_CASE("gradient of constants and linear data") {
  const Grid g = Grid::make(1, {6}, {0.25}, {1}, {5});
  const VectorField3 gc = gradient(g, ScalarField::constant(g, Support::Box, 2.0));
  // Zero except at the last box cell, where the exterior value 0 enters.
  for (std::size_t b = 0; b + 1 < g.box_cells(); ++b) CHECK(gc.c[0][b] == 0.0);
  CHECK(gc.c[0][5] == -8.0);
  CHECK(max_abs(VectorField3{Support::Box, {gc.c[1], gc.c[2], gc.c[2]}}) == 0.0);

  ScalarField u = ScalarField::zeros(g, Support::Box);
  for (std::size_t b = 0; b < g.box_cells(); ++b) u.v[b] = g.cell_center(b)[0];
  const VectorField3 gu = gradient(g, u);
  for (std::size_t b = 0; b + 1 < g.box_cells(); ++b) CHECK(gu.c[0][b] == doctest::Approx(1.0));
}

TEST_CASE("divergence of a gradient is the second difference") {
  const Grid g = Grid::make(1, {4}, {1.0}, {0}, {4});
  ScalarField u = ScalarField::zeros(g, Support::Box);
  for (std::size_t b = 0; b < 4; ++b) u.v[b] = std::pow(b + 0.5, 2);
  const ScalarField d = divergence(g, gradient(g, u));
  // u = (0.25, 2.25, 6.25, 12.25); exterior values are zero.
  CHECK(d.v[0] == doctest::Approx(2.0));
  CHECK(d.v[1] == doctest::Approx(2.0));
  CHECK(d.v[2] == doctest::Approx(2.0));
  CHECK(d.v[3] == doctest::Approx(-18.25));
  CHECK(divergence(g, VectorField3::zeros(g, Support::Box)).v == std::vector<double>(4, 0.0));
}

TEST_CASE("adjoint identities hold to rounding") {
  std::mt19937_64 rng(5);
  for (const Grid& g : sample_grids()) {
    for (int rep = 0; rep < 10; ++rep) {
      const ScalarField u = random_scalar(g, Support::Box, rng);
      const VectorField3 v = random_vector(g, Support::Box, rng);
      const VectorField3 w = random_vector(g, Support::Box, rng);
      const double l = inner(g, gradient(g, u), v);
      const double r = -inner(g, u, divergence(g, v));
      CHECK(std::abs(l - r) <= 1e-12 * (std::abs(l) + norm(g, u) * norm(g, v)));
      const double c1 = inner(g, curl(g, v), w);
      const double c2 = inner(g, v, curl_adjoint(g, w));
      CHECK(std::abs(c1 - c2) <= 1e-12 * (std::abs(c1) + norm(g, v) * norm(g, w)));

      const ScalarField a = random_scalar(g, Support::Omega, rng);
      const VectorField3 b = random_vector(g, Support::Omega, rng);
      const double o1 = inner(g, omega_gradient(g, a), b);
      const double o2 = -inner(g, a, omega_divergence(g, b));
      CHECK(std::abs(o1 - o2) <= 1e-12 * (std::abs(o1) + norm(g, a) * norm(g, b)));
    }
  }
}

TEST_CASE("curl of a gradient vanishes exactly") {
  std::mt19937_64 rng(9);
  for (const Grid& g : {Grid::centered(1, {5}, {0.5}), Grid::centered(2, {3, 2}, {0.5, 0.25}),
                        Grid::centered(3, {2, 3, 2}, {0.5, 1.0, 0.25})}) {
    for (int rep = 0; rep < 20; ++rep) CHECK(max_abs(curl(g, gradient(g, dyadic_scalar(g, rng)))) == 0.0);
  }
  // In 1D no two difference operators meet, so any data cancels.
  const Grid g1 = Grid::centered(1, {7}, {0.3});
  for (int rep = 0; rep < 20; ++rep)
    CHECK(max_abs(curl(g1, gradient(g1, random_scalar(g1, Support::Box, rng)))) == 0.0);
  const Grid g3 = Grid::centered(3, {2, 2, 2}, {0.3, 0.7, 1.1});
  for (int rep = 0; rep < 20; ++rep) {
    const ScalarField u = random_scalar(g3, Support::Box, rng);
    CHECK(max_abs(curl(g3, gradient(g3, u))) <= 1e-13 * max_abs(gradient(g3, u)));
  }
  // Constant fields are curl-free away from the high box faces.
  const VectorField3 cc = curl(g3, VectorField3::constant(g3, Support::Box, {1.0, 2.0, 3.0}));
  for (std::size_t b = 0; b < g3.box_cells(); ++b) {
    bool inside = true;
    for (int a = 0; a < 3; ++a) inside = inside && g3.box_coord(b, a) + 1 < g3.shape()[a];
    if (inside)
      for (int k = 0; k < 3; ++k) CHECK(cc.c[k][b] == 0.0);
  }
}

TEST_CASE("operators are linear") {
  std::mt19937_64 rng(13);
  const Grid g = Grid::centered(3, {2, 2, 2}, {1.0, 0.5, 2.0});
  const VectorField3 v = random_vector(g, Support::Box, rng), w = random_vector(g, Support::Box, rng);
  const VectorField3 lhs = curl(g, 2.0 * v + (-3.0) * w);
  const VectorField3 rhs = 2.0 * curl(g, v) + (-3.0) * curl(g, w);
  CHECK(max_abs(lhs - rhs) <= 1e-13 * max_abs(rhs));
  const ScalarField dl = divergence(g, 2.0 * v + w);
  const ScalarField dr = 2.0 * divergence(g, v) + divergence(g, w);
  for (std::size_t b = 0; b < dl.size(); ++b) CHECK(dl.v[b] == doctest::Approx(dr.v[b]).epsilon(1e-13));
}

TEST_CASE("operator_norm_sq examples") {
  CHECK(operator_norm_sq(Grid::centered(1, {1}, {1.0})) == 0.0);
  for (double h : {1.0, 0.5, 2.0})
    CHECK(operator_norm_sq(Grid::centered(1, {2}, {h})) == doctest::Approx(2.0 / (h * h)).epsilon(1e-8));
  const double a = operator_norm_sq(Grid::centered(2, {2, 3}, {1.0, 0.5}));
  const double b = operator_norm_sq(Grid::centered(2, {3, 2}, {0.5, 1.0}));
  CHECK(a == doctest::Approx(b).epsilon(1e-8));

  std::mt19937_64 rng(17);
  const Grid g = Grid::centered(2, {4, 3}, {0.5, 1.0});
  const double bound = operator_norm_sq(g);
  for (int rep = 0; rep < 100; ++rep) {
    const ScalarField u = random_scalar(g, Support::Omega, rng);
    const VectorField3 du = omega_gradient(g, u);
    CHECK(inner(g, du, du) <= bound * inner(g, u, u) * (1.0 + 1e-8));
  }
}
