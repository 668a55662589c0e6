#include "mmdual/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mmdual/kernels.hpp"
#include "mmdual/linalg.hpp"
#include "mmdual/operators.hpp"

namespace mmdual {

ZStar ZStar::zeros(const Grid& g) {
  ZStar z;
  for (auto& r : z.rows) r = VectorField3::zeros(g, Support::Omega);
  for (auto& b : z.boundary) b.assign(g.boundary_faces().size(), 0.0);
  return z;
}

DualState DualState::initial(const Grid& g, double lambda3_value) {
  DualState d;
  d.lambda1 = VectorField3::zeros(g, Support::Box);
  d.lambda2 = ScalarField::zeros(g, Support::Box);
  d.lambda3 = ScalarField::constant(g, Support::Omega, lambda3_value);
  d.t = ScalarField::constant(g, Support::Omega, 0.5);
  d.zstar = project_zstar_boundary(g, ZStar::zeros(g), d.lambda2);
  return d;
}

KChoice select_K(double alpha, const Grid& g, double margin) {
  if (!(margin > 0.0))
    throw std::invalid_argument("select_K: margin must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("select_K: alpha must be > 0");
  KChoice k;
  k.margin = margin;
  k.spectral_bound = operator_norm_sq(g);
  k.K = std::max(alpha * k.spectral_bound * (1.0 + margin), kFloorK);
  return k;
}

void apply_K(ModelParams& p, const KChoice& k) { p.set_K(k.K, k.spectral_bound); }

VectorField3 zstar_forcing(const Grid& g, const ZStar& z) {
  VectorField3 y = VectorField3::zeros(g, Support::Omega);
  for (int i = 0; i < 3; ++i) {
    require_shape(g, z.rows[i], Support::Omega, "zstar row");
    ScalarField div = omega_divergence(g, z.rows[i]);
    for (std::size_t o = 0; o < g.omega_cells(); ++o)
      y.c[i][o] = -div.v[o] + z.mean[i];
  }
  return y;
}

FtildeResult ftilde_star(const Grid& g, const ZStar& z, double K,
                         double alpha) {
  const VectorField3 y = zstar_forcing(g, z);
  const std::size_t n = g.omega_cells();
  LinearOp op = [&](std::span<const double> x, std::span<double> out) {
    omega_dtd_apply(g, x.data(), out.data());
    for (std::size_t o = 0; o < n; ++o) out[o] = K * x[o] - alpha * out[o];
  };
  FtildeResult r;
  r.maximizer = VectorField3::zeros(g, Support::Omega);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    CgResult cg = conjugate_gradient(op, y.c[i], r.maximizer.c[i]);
    if (!cg.converged && cg.residual > 1e-10 * (1.0 + std::sqrt(kernels::sum_sq(y.c[i]))))
      throw ConvergenceError("ftilde_star: linear solve did not converge");
    s += kernels::dot(y.c[i], r.maximizer.c[i]);
  }
  r.value = 0.5 * g.cell_volume() * s;
  return r;
}

namespace {

std::vector<double> denominators(const Grid& g, const DualState& d, double K) {
  require_shape(g, d.lambda3, Support::Omega, "lambda3");
  std::vector<double> den(g.omega_cells());
  for (std::size_t o = 0; o < den.size(); ++o) {
    den[o] = d.lambda3.v[o] + K;
    if (!(den[o] > 0.0))
      throw AdmissibilityError("A1 violated: lambda3 + K <= 0 at cell " +
                               std::to_string(o));
  }
  return den;
}

}  // namespace

VectorField3 g1_numerator(const Grid& g, const DualState& d,
                          const ModelParams& p, const ConjugateOptions& opt) {
  require_shape(g, d.lambda2, Support::Box, "lambda2");
  require_shape(g, d.t, Support::Omega, "t");
  VectorField3 a = zstar_forcing(g, d.zstar);
  const VectorField3 grad_l2 = gradient(g, d.lambda2);
  const double well = opt.corrupt_well_sign ? 2.0 : -2.0;
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const std::size_t b = g.omega_to_box(o);
    const double w = p.beta * (1.0 + well * d.t.v[o]);
    for (int i = 0; i < 3; ++i)
      a.c[i][o] += -grad_l2.c[i][b] + p.H.c[i][o] + w * p.easy_axis[i];
  }
  return a;
}

double g1_star(const Grid& g, const DualState& d, const ModelParams& p,
               const ConjugateOptions& opt) {
  const std::vector<double> den = denominators(g, d, p.K);
  const VectorField3 a = g1_numerator(g, d, p, opt);
  const double q = kernels::active().quad_over_lin(
      a.c[0].data(), a.c[1].data(), a.c[2].data(), den.data(), den.size());
  const double vol = g.cell_volume();
  return 0.5 * vol * q + 0.5 * integral(g, d.lambda3) -
         p.beta * vol * static_cast<double>(g.omega_cells());
}

VectorField3 g1_maximizer(const Grid& g, const DualState& d,
                          const ModelParams& p) {
  const std::vector<double> den = denominators(g, d, p.K);
  VectorField3 a = g1_numerator(g, d, p);
  kernels::active().divide3(a.c[0].data(), a.c[1].data(), a.c[2].data(),
                            den.data(), a.c[0].data(), a.c[1].data(),
                            a.c[2].data(), den.size());
  return a;
}

VectorField3 g2_maximizer(const Grid& g, const DualState& d) {
  require_shape(g, d.lambda1, Support::Box, "lambda1");
  require_shape(g, d.lambda2, Support::Box, "lambda2");
  return gradient(g, d.lambda2) - curl_adjoint(g, d.lambda1);
}

double g2_star(const Grid& g, const DualState& d) {
  const VectorField3 f = g2_maximizer(g, d);
  return 0.5 * inner(g, f, f);
}

DualValueParts dual_value_parts(const Grid& g, const DualState& d,
                                const ModelParams& p) {
  const double res = zstar_boundary_residual(g, d.zstar, d.lambda2);
  if (!(res <= 1e-10))
    throw AdmissibilityError("dual_value: z* violates the boundary coupling (residual " +
                             std::to_string(res) + ")");
  DualValueParts r;
  r.g1 = g1_star(g, d, p);
  r.ftilde = ftilde_star(g, d.zstar, p.K, p.alpha).value;
  r.g2 = g2_star(g, d);
  r.value = r.ftilde - r.g1 - r.g2;
  return r;
}

double dual_value(const Grid& g, const DualState& d, const ModelParams& p) {
  return dual_value_parts(g, d, p).value;
}

A1Report in_A1(const DualState& d, double K) {
  A1Report r;
  r.min_margin = std::numeric_limits<double>::infinity();
  for (double l : d.lambda3.v) r.min_margin = std::min(r.min_margin, l + K);
  r.member = r.min_margin > 0.0;
  return r;
}

A2Report in_A2(const Grid& g, const DualState& d, double alpha, double tol) {
  require_shape(g, d.lambda3, Support::Omega, "in_A2: lambda3");
  const std::size_t n = g.omega_cells();
  LinearOp op = [&](std::span<const double> x, std::span<double> y) {
    omega_dtd_apply(g, x.data(), y.data());
    for (std::size_t o = 0; o < n; ++o)
      y[o] = alpha * y[o] + d.lambda3.v[o] * x[o];
  };
  EigenEstimate e = smallest_eigenvalue(op, n, 1e-13);
  if (!e.converged)
    throw ConvergenceError("in_A2: eigenvalue iteration did not converge");
  double scale = 0.0;
  for (double l : d.lambda3.v) scale = std::max(scale, std::abs(l));
  scale = std::max({scale, alpha * 4.0 * g.dim() /
                               std::pow(*std::min_element(g.spacing().begin(),
                                                          g.spacing().begin() + g.dim()),
                                        2),
                    1.0});
  A2Report r;
  r.min_eigenvalue = e.value;
  r.on_boundary = std::abs(e.value) <= tol * scale;
  r.member = e.value > tol * scale;
  return r;
}

ZStar project_zstar_boundary(const Grid& g, const ZStar& z,
                             const ScalarField& lambda2) {
  require_shape(g, lambda2, Support::Box, "project_zstar_boundary: lambda2");
  ZStar r = z;
  const auto& faces = g.boundary_faces();
  for (int i = 0; i < 3; ++i) {
    r.boundary[i].resize(faces.size());
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const BoundaryFace& f = faces[k];
      const double n_i = f.axis == i ? static_cast<double>(f.side) : 0.0;
      r.boundary[i][k] = -lambda2.v[g.omega_to_box(f.omega_cell)] * n_i;
    }
  }
  return r;
}

double zstar_boundary_residual(const Grid& g, const ZStar& z,
                               const ScalarField& lambda2) {
  const auto& faces = g.boundary_faces();
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (z.boundary[i].size() != faces.size())
      return std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const BoundaryFace& f = faces[k];
      const double n_i = f.axis == i ? static_cast<double>(f.side) : 0.0;
      worst = std::max(worst,
                       std::abs(z.boundary[i][k] +
                                lambda2.v[g.omega_to_box(f.omega_cell)] * n_i));
    }
  }
  return worst;
}

}  // namespace mmdual
