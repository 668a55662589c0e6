#include "mmdual/primal.hpp"

#include <cmath>
#include <string>

#include "mmdual/kernels.hpp"
#include "mmdual/linalg.hpp"
#include "mmdual/operators.hpp"

namespace mmdual {

void ModelParams::validate(const Grid& g) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("params: alpha must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("params: beta must be > 0");
  const double en = std::sqrt(dot3(easy_axis, easy_axis));
  if (!(std::abs(en - 1.0) <= 1e-12))
    throw std::invalid_argument("params: easy_axis must be a unit vector");
  require_shape(g, H, Support::Omega, "params: H");
  require_finite(H, "params: H");
}

void ModelParams::set_K(double k, double bound) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::invalid_argument("params: K must be > 0");
  if (!(k > alpha * bound))
    throw std::invalid_argument(
        "params: K must exceed alpha * lambda_max(D^T D)");
  K = k;
  spectral_bound = bound;
}

ModelParams make_params(const Grid& g, double alpha, double beta,
                        const Vec3& easy_axis, const Vec3& constant_H) {
  ModelParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.easy_axis = easy_axis;
  p.H = VectorField3::constant(g, Support::Omega, constant_H);
  p.validate(g);
  return p;
}

double exchange_energy(const Grid& g, const VectorField3& m, double alpha) {
  require_shape(g, m, Support::Omega, "exchange_energy");
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    VectorField3 dm = omega_gradient(g, ScalarField{Support::Omega, m.c[i]});
    s += inner(g, dm, dm);
  }
  return 0.5 * alpha * s;
}

double anisotropy_density(const Vec3& m, double beta, const Vec3& e) {
  return beta * (1.0 - std::abs(dot3(m, e)));
}

double relaxed_anisotropy(const Grid& g, const VectorField3& m,
                          const ScalarField& t, double beta, const Vec3& e) {
  require_shape(g, m, Support::Omega, "relaxed_anisotropy: m");
  require_shape(g, t, Support::Omega, "relaxed_anisotropy: t");
  double s = 0.0;
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const double tc = t.v[o];
    if (!(tc >= 0.0 && tc <= 1.0))
      throw std::invalid_argument("relaxed_anisotropy: t outside [0, 1] at cell " +
                                  std::to_string(o));
    const double me = dot3(m.at(o), e);
    s += tc * beta * (1.0 + me) + (1.0 - tc) * beta * (1.0 - me);
  }
  return g.cell_volume() * s;
}

double anisotropy_energy(const Grid& g, const VectorField3& m, double beta,
                         const Vec3& e) {
  require_shape(g, m, Support::Omega, "anisotropy_energy");
  double s = 0.0;
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    s += anisotropy_density(m.at(o), beta, e);
  return g.cell_volume() * s;
}

double zeeman_energy(const Grid& g, const VectorField3& m,
                     const VectorField3& H) {
  require_shape(g, m, Support::Omega, "zeeman_energy: m");
  require_shape(g, H, Support::Omega, "zeeman_energy: H");
  return -inner(g, H, m);
}

VectorField3 stray_field(const Grid& g, const VectorField3& m, double tol) {
  require_shape(g, m, Support::Omega, "stray_field");
  const VectorField3 mchi = extend_by_zero(g, m);
  // G^T G u = G^T (m chi)  <=>  div grad u = div(m chi).
  ScalarField rhs = -1.0 * divergence(g, mchi);
  const std::size_t n = g.box_cells();
  std::vector<double> inv_diag(n);
  for (std::size_t b = 0; b < n; ++b) {
    double d = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double h2 = g.spacing()[a] * g.spacing()[a];
      d += (g.box_coord(b, a) > 0 ? 1.0 : 0.0) / h2 + 1.0 / h2;
    }
    inv_diag[b] = 1.0 / d;
  }
  LinearOp op = [&g](std::span<const double> x, std::span<double> y) {
    ScalarField u{Support::Box, {x.begin(), x.end()}};
    ScalarField r = -1.0 * divergence(g, gradient(g, u));
    std::copy(r.v.begin(), r.v.end(), y.begin());
  };
  ScalarField u = ScalarField::zeros(g, Support::Box);
  CgOptions opts;
  opts.rel_tol = 1e-15;
  opts.abs_tol = 1e-3 * tol / std::sqrt(g.cell_volume());
  conjugate_gradient(op, rhs.v, u.v, opts, inv_diag);
  VectorField3 f = gradient(g, u);
  const double r1 = norm(g, divergence(g, mchi - f));
  if (!(r1 <= tol * std::max(1.0, norm(g, mchi))))
    throw ConvergenceError("stray_field: Poisson residual " +
                           std::to_string(r1) + " above tolerance");
  return f;
}

EnergyReport total_energy(const Grid& g, const PrimalState& s,
                          const ModelParams& p) {
  require_shape(g, s.m, Support::Omega, "total_energy: m");
  require_shape(g, s.f, Support::Box, "total_energy: f");
  require_shape(g, s.t, Support::Omega, "total_energy: t");
  require_shape(g, p.H, Support::Omega, "total_energy: H");
  EnergyReport r;
  r.exchange = exchange_energy(g, s.m, p.alpha);
  r.anisotropy = relaxed_anisotropy(g, s.m, s.t, p.beta, p.easy_axis);
  r.zeeman = zeeman_energy(g, s.m, p.H);
  r.magnetostatic = 0.5 * inner(g, s.f, s.f);
  r.total = r.exchange + r.anisotropy + r.zeeman + r.magnetostatic;

  const double mm = inner(g, s.m, s.m);
  r.shifted_g0 = r.exchange - 0.5 * p.K * mm;
  r.shifted_g1 = r.anisotropy + r.zeeman + 0.5 * p.K * mm;
  r.shifted_g2 = r.magnetostatic;
  r.shifted_total = r.shifted_g0 + r.shifted_g1 + r.shifted_g2;
  const double scale = std::abs(r.exchange) + std::abs(r.anisotropy) +
                       std::abs(r.zeeman) + std::abs(r.magnetostatic) +
                       p.K * mm;
  r.split_consistent =
      std::abs(r.shifted_total - r.total) <= 1e-12 * std::max(1.0, scale);
  return r;
}

ConstraintResiduals constraint_residuals(const Grid& g, const PrimalState& s) {
  require_shape(g, s.m, Support::Omega, "constraint_residuals: m");
  require_shape(g, s.f, Support::Box, "constraint_residuals: f");
  ConstraintResiduals r;
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const Vec3 m = s.m.at(o);
    r.r0 = std::max(r.r0, std::abs(std::sqrt(dot3(m, m)) - 1.0));
  }
  r.r1 = norm(g, divergence(g, extend_by_zero(g, s.m) - s.f));
  r.r2 = norm(g, curl(g, s.f));
  return r;
}

ZeroMagnitudeError::ZeroMagnitudeError(std::size_t c)
    : std::invalid_argument("project_unit_sphere: zero magnitude at cell " +
                            std::to_string(c)),
      cell(c) {}

VectorField3 project_unit_sphere(const VectorField3& m) {
  VectorField3 r = m;
  for (std::size_t o = 0; o < m.size(); ++o) {
    const Vec3 v = m.at(o);
    const double n = std::sqrt(dot3(v, v));
    if (!(n > 0.0)) throw ZeroMagnitudeError(o);
    r.set(o, {v[0] / n, v[1] / n, v[2] / n});
  }
  return r;
}

}  // namespace mmdual
