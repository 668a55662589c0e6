#pragma once

#include <cstddef>
#include <vector>

#include "mmdual/dual.hpp"
#include "mmdual/field.hpp"
#include "mmdual/grid.hpp"
#include "mmdual/primal.hpp"

namespace mmdual {

struct SolverOptions {
  std::size_t inner_max_rounds = 200;
  double inner_rel_tol = 1e-10;
  /// Enumerate every vertex t in {0,1}^n when Omega has at most this many
  /// cells; alternate otherwise.
  std::size_t exhaustive_t_cells = 8;
  /// Alternation order: false = z* step first.
  bool t_first = false;

  std::size_t outer_max_iter = 500;
  double outer_grad_tol = 1e-8;
  double armijo = 1e-4;
  /// Armijo reference is the minimum over this many recent accepted values;
  /// 1 is the monotone rule, larger windows trade monotonicity for speed.
  std::size_t nonmonotone_window = 1;
  double projection_eps_rel = 1e-6;  // lambda3 >= -K + eps * K
};

struct InnerResult {
  ZStar zstar;
  ScalarField t;
  VectorField3 m_hat;  // common maximizer of F~* and G1*
  double value = 0.0;
  std::size_t rounds = 0;
  bool converged = false;
  /// lambda3 outside A2: the z* problem has no minimum.
  bool unbounded = false;
};

/// inf over (z*, t) of J*(lambda, z*, t) for the multipliers in `lambda`;
/// lambda.t and lambda.zstar seed the alternation. Throws
/// AdmissibilityError when lambda is outside A1.
InnerResult inner_minimize(const Grid& g, const DualState& lambda,
                           const ModelParams& p, const SolverOptions& o = {});

/// Gradient of lambda -> inf J* (envelope form) in the L2 inner product.
struct DualGradient {
  VectorField3 lambda1;  // curl f^
  ScalarField lambda2;   // div(f^ - m^ chi)
  ScalarField lambda3;   // (|m^|^2 - 1) / 2
};

DualGradient dual_gradient(const Grid& g, const DualState& lambda,
                           const InnerResult& inner, const ModelParams& p);

struct OuterResult {
  DualState lambda;  // multipliers with the inner minimizer (z*, t)
  InnerResult inner;
  std::vector<double> trace;  // accepted dual values
  std::size_t iterations = 0;
  std::size_t inner_rounds = 0;
  double projected_gradient_norm = 0.0;
  bool converged = false;
  bool line_search_failed = false;
};

OuterResult outer_maximize(const Grid& g, const ModelParams& p,
                           const DualState& initial,
                           const SolverOptions& o = {});

struct RecoveredPrimal {
  PrimalState state;
  ConstraintResiduals residuals;
};

/// m0 = a / (lambda3 + K) cellwise, f0 = grad lambda2 - curl^T lambda1,
/// t passed through. m0 is not normalized.
RecoveredPrimal recover_primal(const Grid& g, const DualState& d,
                               const ModelParams& p);

class InfeasibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// total_energy - dual_value after checking primal feasibility and dual
/// admissibility; throws InfeasibleError / AdmissibilityError.
double duality_gap(const Grid& g, const PrimalState& primal,
                   const DualState& dual, const ModelParams& p);

struct Lambda4Result {
  ScalarField lambda4;
  ScalarField t_derivative;  // dJ*/dt per unit volume
  std::vector<std::size_t> degenerate_cells;    // |2t - 1| < 1e-8
  std::vector<std::size_t> inconsistent_cells;  // degenerate with dJ*/dt != 0
};

Lambda4Result compute_lambda4(const Grid& g, const DualState& d,
                              const ModelParams& p);

struct Certificate {
  bool zz_hessian_pd = false;
  double zz_min_eigenvalue = 0.0;
  bool pointwise_det_positive = false;
  double min_pointwise_det = 0.0;
  bool degenerate = false;
  bool global_checked = false;
  bool global_positive = false;
  double global_min_eigenvalue = 0.0;
  /// First-order precondition, set by solve from the outer projected
  /// gradient; optimality_certificate alone cannot see it and leaves it true.
  bool stationary = true;
  double first_order_residual = 0.0;
  bool passed = false;
};

/// Largest projected-gradient norm at which the second-order test is read.
constexpr double kStationarityTol = 1e-6;

Certificate optimality_certificate(const Grid& g, const DualState& d,
                                   const Lambda4Result& l4,
                                   const ModelParams& p);

struct SolveReport {
  double dual_value = 0.0;
  RecoveredPrimal primal;
  EnergyReport energy;
  double gap = 0.0;
  double relative_gap = 0.0;
  Certificate certificate;
  Lambda4Result lambda4;
  bool in_A2 = false;
  double a2_min_eigenvalue = 0.0;
  OuterResult outer;
  double seconds = 0.0;
};

/// Default start: lambda1 = lambda2 = 0, lambda3 = max|H| + beta, t = 1/2,
/// z* = 0 projected.
DualState default_initial_dual(const Grid& g, const ModelParams& p);

SolveReport solve(const Grid& g, const ModelParams& p,
                  const SolverOptions& o = {});

}  // namespace mmdual
