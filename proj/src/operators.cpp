#include "mmdual/operators.hpp"

#include <cmath>
#include <vector>

#include "mmdual/linalg.hpp"

namespace mmdual {

namespace {

// Forward difference along `axis` with zero values outside the box.
void box_forward(const Grid& g, int axis, const std::vector<double>& u,
                 std::vector<double>& out, double sign = 1.0) {
  const std::size_t s = g.box_stride(axis);
  const std::size_t n = g.shape()[axis];
  const double inv_h = sign / g.spacing()[axis];
  for (std::size_t b = 0; b < g.box_cells(); ++b) {
    const double next = g.box_coord(b, axis) + 1 < n ? u[b + s] : 0.0;
    out[b] += (next - u[b]) * inv_h;
  }
}

// Transpose of box_forward: ((w[b - s] or 0) - w[b]) / h.
void box_forward_t(const Grid& g, int axis, const std::vector<double>& w,
                   std::vector<double>& out, double sign = 1.0) {
  const std::size_t s = g.box_stride(axis);
  const double inv_h = sign / g.spacing()[axis];
  for (std::size_t b = 0; b < g.box_cells(); ++b) {
    const double prev = g.box_coord(b, axis) > 0 ? w[b - s] : 0.0;
    out[b] += (prev - w[b]) * inv_h;
  }
}

}  // namespace

VectorField3 gradient(const Grid& g, const ScalarField& u) {
  require_shape(g, u, Support::Box, "gradient");
  VectorField3 r = VectorField3::zeros(g, Support::Box);
  for (int a = 0; a < g.dim(); ++a) box_forward(g, a, u.v, r.c[a]);
  return r;
}

ScalarField divergence(const Grid& g, const VectorField3& v) {
  require_shape(g, v, Support::Box, "divergence");
  ScalarField r = ScalarField::zeros(g, Support::Box);
  for (int a = 0; a < g.dim(); ++a) box_forward_t(g, a, v.c[a], r.v, -1.0);
  return r;
}

VectorField3 curl(const Grid& g, const VectorField3& v) {
  require_shape(g, v, Support::Box, "curl");
  VectorField3 r = VectorField3::zeros(g, Support::Box);
  const int d = g.dim();
  // (curl v)_k = F_{k+1} v_{k+2} - F_{k+2} v_{k+1}, indices mod 3.
  for (int k = 0; k < 3; ++k) {
    const int p = (k + 1) % 3, q = (k + 2) % 3;
    if (p < d) box_forward(g, p, v.c[q], r.c[k], 1.0);
    if (q < d) box_forward(g, q, v.c[p], r.c[k], -1.0);
  }
  return r;
}

VectorField3 curl_adjoint(const Grid& g, const VectorField3& w) {
  require_shape(g, w, Support::Box, "curl_adjoint");
  VectorField3 r = VectorField3::zeros(g, Support::Box);
  const int d = g.dim();
  for (int k = 0; k < 3; ++k) {
    const int p = (k + 1) % 3, q = (k + 2) % 3;
    // transpose of: r_k += F_p v_q - F_q v_p
    if (p < d) box_forward_t(g, p, w.c[k], r.c[q], 1.0);
    if (q < d) box_forward_t(g, q, w.c[k], r.c[p], -1.0);
  }
  return r;
}

VectorField3 omega_gradient(const Grid& g, const ScalarField& u) {
  require_shape(g, u, Support::Omega, "omega_gradient");
  VectorField3 r = VectorField3::zeros(g, Support::Omega);
  const Index3 os = g.omega_shape();
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t s = g.omega_stride(a);
    const double inv_h = 1.0 / g.spacing()[a];
    for (std::size_t o = 0; o < g.omega_cells(); ++o)
      if (g.omega_coord(o, a) + 1 < os[a])
        r.c[a][o] = (u.v[o + s] - u.v[o]) * inv_h;
  }
  return r;
}

namespace {

void omega_dt_accumulate(const Grid& g, int a, const double* w, double* out,
                         double sign) {
  const Index3 os = g.omega_shape();
  const std::size_t s = g.omega_stride(a);
  const double inv_h = sign / g.spacing()[a];
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const std::size_t c = g.omega_coord(o, a);
    double acc = 0.0;
    if (c > 0) acc += w[o - s];
    if (c + 1 < os[a]) acc -= w[o];
    out[o] += acc * inv_h;
  }
}

}  // namespace

ScalarField omega_divergence(const Grid& g, const VectorField3& v) {
  require_shape(g, v, Support::Omega, "omega_divergence");
  ScalarField r = ScalarField::zeros(g, Support::Omega);
  for (int a = 0; a < g.dim(); ++a)
    omega_dt_accumulate(g, a, v.c[a].data(), r.v.data(), -1.0);
  return r;
}

void omega_dtd_apply(const Grid& g, const double* u, double* out) {
  const std::size_t n = g.omega_cells();
  const Index3 os = g.omega_shape();
  for (std::size_t o = 0; o < n; ++o) out[o] = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t s = g.omega_stride(a);
    const double inv_h2 = 1.0 / (g.spacing()[a] * g.spacing()[a]);
    for (std::size_t o = 0; o < n; ++o) {
      const std::size_t c = g.omega_coord(o, a);
      double acc = 0.0;
      if (c > 0) acc += u[o] - u[o - s];
      if (c + 1 < os[a]) acc += u[o] - u[o + s];
      out[o] += acc * inv_h2;
    }
  }
}

double operator_norm_sq(const Grid& g, double rel_tol) {
  const std::size_t n = g.omega_cells();
  LinearOp op = [&g](std::span<const double> x, std::span<double> y) {
    omega_dtd_apply(g, x.data(), y.data());
  };
  EigenEstimate est = power_iteration(op, n, rel_tol);
  if (!est.converged)
    throw ConvergenceError("operator_norm_sq: power iteration did not converge");
  return std::max(est.value, 0.0);
}

}  // namespace mmdual
