#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmdual {

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// y = A x for a symmetric operator.
using LinearOp = std::function<void(std::span<const double>, std::span<double>)>;

struct CgOptions {
  double rel_tol = 1e-14;
  double abs_tol = 0.0;
  std::size_t max_iter = 0;  // 0: 10 n + 100
};

struct CgResult {
  bool converged = false;
  /// Non-positive curvature p^T A p <= 0 was met; the operator is not
  /// positive definite on the Krylov space.
  bool indefinite = false;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients; `x` holds the initial guess.
/// An empty `inv_diag` means no preconditioning.
CgResult conjugate_gradient(const LinearOp& a, std::span<const double> b,
                            std::span<double> x, const CgOptions& opts = {},
                            std::span<const double> inv_diag = {});

struct EigenEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Dominant eigenvalue (by modulus, signed) of a symmetric operator.
EigenEstimate power_iteration(const LinearOp& a, std::size_t n, double rel_tol,
                              std::size_t max_iter = 200000,
                              unsigned long long seed = 0x5eedULL);

/// Smallest eigenvalue of a symmetric operator by power iteration on the
/// shifted operator sigma I - A with sigma the dominant modulus. The
/// tolerance is relative to sigma.
EigenEstimate smallest_eigenvalue(const LinearOp& a, std::size_t n,
                                  double rel_tol,
                                  std::size_t max_iter = 200000,
                                  unsigned long long seed = 0x5eedULL);

}  // namespace mmdual
