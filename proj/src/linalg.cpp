#include "mmdual/linalg.hpp"

#include <cmath>
#include <random>

#include "mmdual/kernels.hpp"

namespace mmdual {

CgResult conjugate_gradient(const LinearOp& a, std::span<const double> b,
                            std::span<double> x, const CgOptions& opts,
                            std::span<const double> inv_diag) {
  const std::size_t n = b.size();
  const std::size_t max_iter = opts.max_iter ? opts.max_iter : 10 * n + 100;
  CgResult res;

  std::vector<double> r(n), z(n), p(n), ap(n);
  a(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];

  const double bnorm = std::sqrt(kernels::sum_sq(b));
  const double target = std::max(opts.rel_tol * bnorm, opts.abs_tol);
  auto precondition = [&] {
    if (inv_diag.empty()) {
      z = r;
    } else {
      for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    }
  };

  res.residual = std::sqrt(kernels::sum_sq(r));
  if (res.residual <= target) {
    res.converged = true;
    return res;
  }
  precondition();
  p = z;
  double rz = kernels::dot(r, z);
  for (std::size_t it = 0; it < max_iter; ++it) {
    a(p, ap);
    const double pap = kernels::dot(p, ap);
    if (!(pap > 0.0)) {
      res.indefinite = true;
      res.iterations = it;
      return res;
    }
    const double step = rz / pap;
    kernels::axpy(step, p, x);
    kernels::axpy(-step, ap, r);
    res.iterations = it + 1;
    res.residual = std::sqrt(kernels::sum_sq(r));
    if (res.residual <= target) {
      res.converged = true;
      return res;
    }
    precondition();
    const double rz_new = kernels::dot(r, z);
    kernels::xpay(z, rz_new / rz, p);
    rz = rz_new;
  }
  return res;
}

namespace {

std::vector<double> random_unit(std::size_t n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(rng);
  const double s = std::sqrt(kernels::sum_sq(v));
  for (double& x : v) x /= s;
  return v;
}

}  // namespace

EigenEstimate power_iteration(const LinearOp& a, std::size_t n, double rel_tol,
                              std::size_t max_iter, unsigned long long seed) {
  EigenEstimate est;
  if (n == 0) {
    est.converged = true;
    return est;
  }
  std::vector<double> v = random_unit(n, seed), w(n);
  double prev = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    a(v, w);
    const double rayleigh = kernels::dot(v, w);
    const double wn = std::sqrt(kernels::sum_sq(w));
    est.iterations = it + 1;
    est.value = rayleigh;
    if (wn == 0.0) {
      est.converged = true;
      return est;
    }
    // Residual of the eigenpair, relative to the operator scale.
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = w[i] - rayleigh * v[i];
      res2 += d * d;
    }
    if (it > 0 && std::abs(rayleigh - prev) <= rel_tol * std::abs(rayleigh) &&
        std::sqrt(res2) <= std::sqrt(rel_tol) * wn) {
      est.converged = true;
      return est;
    }
    prev = rayleigh;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
  }
  return est;
}

EigenEstimate smallest_eigenvalue(const LinearOp& a, std::size_t n,
                                  double rel_tol, std::size_t max_iter,
                                  unsigned long long seed) {
  EigenEstimate dom = power_iteration(a, n, 1e-6, max_iter, seed);
  if (!dom.converged) return dom;
  // Any sigma >= lambda_max works; pad the dominant estimate.
  const double sigma = 1.01 * std::abs(dom.value) + 1e-300;
  std::vector<double> tmp(n);
  LinearOp shifted = [&](std::span<const double> x, std::span<double> y) {
    a(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = sigma * x[i] - y[i];
  };
  EigenEstimate top = power_iteration(shifted, n, rel_tol, max_iter, seed + 1);
  EigenEstimate out;
  out.value = sigma - top.value;
  out.iterations = dom.iterations + top.iterations;
  out.converged = top.converged;
  return out;
}

}  // namespace mmdual
