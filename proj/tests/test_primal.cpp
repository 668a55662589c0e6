#include "doctest.h"

#include <cmath>
#include <random>

#include "mmdual/operators.hpp"
#include "mmdual/primal.hpp"

using namespace mmdual;

namespace {

VectorField3 random_unit(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  VectorField3 m = VectorField3::zeros(g, Support::Omega);
  for (auto& c : m.c)
    for (double& v : c) v = n(rng);
  return project_unit_sphere(m);
}

ScalarField random_t(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScalarField t = ScalarField::zeros(g, Support::Omega);
  for (double& v : t.v) v = u(rng);
  return t;
}

const Vec3 kE{0.0, 0.6, 0.8};

}  // namespace

TEST_CASE("exchange energy") {
  const Grid g = Grid::centered(1, {2}, {1.0});
  VectorField3 m = VectorField3::zeros(g, Support::Omega);
  m.set(0, {1, 0, 0});
  m.set(1, {0, 1, 0});
  // (1/2) * ((0 - 1)^2 + (1 - 0)^2) on the single interior difference.
  CHECK(exchange_energy(g, m, 1.0) == doctest::Approx(1.0));
  CHECK(exchange_energy(g, m, 2.0) == doctest::Approx(2.0));
  const Grid g3 = Grid::centered(3, {2, 2, 2}, {1.0, 0.5, 2.0});
  CHECK(exchange_energy(g3, VectorField3::constant(g3, Support::Omega, kE), 3.0) == 0.0);
  std::mt19937_64 rng(1);
  CHECK(exchange_energy(g3, random_unit(g3, rng), 1.0) > 0.0);
}

TEST_CASE("anisotropy density and relaxation") {
  const double beta = 1.7;
  CHECK(anisotropy_density(kE, beta, kE) == doctest::Approx(0.0));
  CHECK(anisotropy_density({-kE[0], -kE[1], -kE[2]}, beta, kE) == doctest::Approx(0.0));
  CHECK(anisotropy_density({1, 0, 0}, beta, kE) == doctest::Approx(beta));

  const Grid g = Grid::centered(2, {2, 2}, {0.5, 1.0});
  std::mt19937_64 rng(2);
  const VectorField3 m = random_unit(g, rng);
  const double vol = g.cell_volume();
  double plus = 0.0, phi = 0.0;
  ScalarField best = ScalarField::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const double me = dot3(m.at(o), kE);
    plus += vol * beta * (1.0 + me);
    phi += vol * anisotropy_density(m.at(o), beta, kE);
    best.v[o] = me < 0.0 ? 1.0 : 0.0;
  }
  CHECK(relaxed_anisotropy(g, m, ScalarField::constant(g, Support::Omega, 1.0), beta, kE) ==
        doctest::Approx(plus));
  CHECK(relaxed_anisotropy(g, m, ScalarField::constant(g, Support::Omega, 0.5), beta, kE) ==
        doctest::Approx(beta * vol * 4));
  CHECK(relaxed_anisotropy(g, m, best, beta, kE) == doctest::Approx(phi));
  CHECK(anisotropy_energy(g, m, beta, kE) == doctest::Approx(phi));
  for (int rep = 0; rep < 20; ++rep)
    CHECK(relaxed_anisotropy(g, m, random_t(g, rng), beta, kE) >= phi - 1e-14);
  CHECK_THROWS_AS(relaxed_anisotropy(g, m, ScalarField::constant(g, Support::Omega, 1.5), beta, kE),
                  std::invalid_argument);
}

TEST_CASE("stray field") {
  const Grid g = Grid::centered(1, {8}, {0.5});
  const VectorField3 f0 = stray_field(g, VectorField3::zeros(g, Support::Omega));
  for (const auto& c : f0.c)
    for (double v : c) CHECK(v == 0.0);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const VectorField3 m = random_unit(g, rng);
    PrimalState s{m, stray_field(g, m), ScalarField::constant(g, Support::Omega, 0.0)};
    const ConstraintResiduals r = constraint_residuals(g, s);
    CHECK(r.r1 <= 1e-8);
    CHECK(r.r2 == 0.0);
  }
  const Grid g3 = Grid::centered(3, {2, 2, 2}, {1.0, 1.0, 1.0});
  const VectorField3 m3 = random_unit(g3, rng);
  PrimalState s3{m3, stray_field(g3, m3), ScalarField::zeros(g3, Support::Omega)};
  const ConstraintResiduals r3 = constraint_residuals(g3, s3);
  CHECK(r3.r1 <= 1e-8);
  CHECK(r3.r2 <= 1e-13);
}

TEST_CASE("total energy report") {
  const Grid g = Grid::centered(2, {2, 3}, {1.0, 0.5});
  ModelParams p = make_params(g, 1.3, 0.9, kE, {0, 0, 0});
  p.set_K(100.0, operator_norm_sq(g));
  const VectorField3 m = VectorField3::constant(g, Support::Omega, kE);
  const PrimalState s{m, stray_field(g, m), ScalarField::zeros(g, Support::Omega)};
  const EnergyReport e = total_energy(g, s, p);
  CHECK(e.exchange == 0.0);
  CHECK(e.anisotropy == doctest::Approx(0.0));
  CHECK(e.zeeman == 0.0);
  CHECK(e.total == doctest::Approx(e.magnetostatic));
  CHECK(e.magnetostatic > 0.0);
  CHECK(e.split_consistent);

  std::mt19937_64 rng(4);
  ModelParams q = make_params(g, 1.3, 0.9, kE, {0.2, -1.0, 0.5});
  q.set_K(100.0, operator_norm_sq(g));
  for (int rep = 0; rep < 10; ++rep) {
    const VectorField3 mr = random_unit(g, rng);
    const PrimalState sr{mr, stray_field(g, mr), random_t(g, rng)};
    const EnergyReport er = total_energy(g, sr, q);
    CHECK(er.split_consistent);
    CHECK(std::abs(er.shifted_total - er.total) <= 1e-12 * std::max(1.0, std::abs(er.total)));
    const double parts = er.exchange + er.anisotropy + er.zeeman + er.magnetostatic;
    CHECK(std::abs(parts - er.total) <= 1e-14 * std::max(1.0, std::abs(er.total)));
  }

  const Grid one = Grid::centered(1, {1}, {0.5});
  const double c = 3.0;
  const ModelParams p1 = make_params(one, 1.0, 1.0, kE, {c * kE[0], c * kE[1], c * kE[2]});
  const VectorField3 me = VectorField3::constant(one, Support::Omega, kE);
  CHECK(zeeman_energy(one, me, p1.H) == doctest::Approx(-c * one.cell_volume()));
}

TEST_CASE("two-well symmetry of the energy") {
  const Grid g = Grid::centered(2, {2, 2}, {1.0, 1.0});
  const ModelParams p = make_params(g, 1.0, 2.0, kE, {0, 0, 0});
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const VectorField3 m = random_unit(g, rng);
    const ScalarField t = random_t(g, rng);
    const VectorField3 mm = -1.0 * m;
    ScalarField tt = t;
    for (double& v : tt.v) v = 1.0 - v;
    const double a = total_energy(g, {m, stray_field(g, m), t}, p).total;
    const double b = total_energy(g, {mm, stray_field(g, mm), tt}, p).total;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("constraint residuals") {
  const Grid g = Grid::centered(3, {2, 1, 2}, {1.0, 1.0, 1.0});
  std::mt19937_64 rng(6);
  const VectorField3 m = random_unit(g, rng);
  PrimalState s{m, stray_field(g, m), ScalarField::zeros(g, Support::Omega)};
  ConstraintResiduals r = constraint_residuals(g, s);
  CHECK(r.r0 <= 1e-12);
  CHECK(r.r1 <= 1e-8);
  CHECK(r.r2 <= 1e-13);

  PrimalState doubled = s;
  doubled.m = 2.0 * m;
  CHECK(constraint_residuals(g, doubled).r0 == doctest::Approx(1.0));

  PrimalState swirl = s;
  // A single x-directed bump has a nonzero discrete curl.
  swirl.f.c[0][g.omega_to_box(0)] += 1.0;
  CHECK(constraint_residuals(g, swirl).r2 > 0.1);
}

TEST_CASE("projection onto the unit sphere") {
  const Grid g = Grid::centered(1, {3}, {1.0});
  const VectorField3 two = VectorField3::constant(g, Support::Omega, {2, 0, 0});
  const VectorField3 one = project_unit_sphere(two);
  for (std::size_t o = 0; o < 3; ++o) CHECK(one.at(o) == Vec3{1, 0, 0});
  const VectorField3 again = project_unit_sphere(one);
  for (int i = 0; i < 3; ++i) CHECK(again.c[i] == one.c[i]);

  std::mt19937_64 rng(7);
  const VectorField3 r = random_unit(g, rng);
  for (std::size_t o = 0; o < 3; ++o) CHECK(std::abs(std::sqrt(dot3(r.at(o), r.at(o))) - 1.0) <= 1e-15);

  VectorField3 z = two;
  z.set(1, {0, 0, 0});
  try {
    project_unit_sphere(z);
    FAIL("expected ZeroMagnitudeError");
  } catch (const ZeroMagnitudeError& e) {
    CHECK(e.cell == 1);
  }
}

TEST_CASE("model parameter validation") {
  const Grid g = Grid::centered(1, {2}, {1.0});
  CHECK_THROWS_AS(make_params(g, 0.0, 1.0, kE, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_params(g, 1.0, -1.0, kE, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_params(g, 1.0, 1.0, {1, 1, 0}, {0, 0, 0}), std::invalid_argument);
  ModelParams p = make_params(g, 1.0, 1.0, kE, {0, 0, 0});
  CHECK_FALSE(p.has_K());
  CHECK_THROWS_AS(p.set_K(1.5, 2.0), std::invalid_argument);
  p.set_K(2.5, 2.0);
  CHECK(p.K == 2.5);
}
