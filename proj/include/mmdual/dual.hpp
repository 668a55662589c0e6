#pragma once

// Dual ingredients: the coercivity shift K, the conjugates F~*, G1*, G2*,
// admissibility tests and the dual functional J* = F~* - G1* - G2*.
//
// Conventions. The Lagrangian behind G~* = G1* + G2* is
//
//   L(m, f) = sum_i <y_i, m_i> + <lambda2, div(m chi - f)> - <lambda1, curl f>
//             - 1/2 <lambda3, |m|^2 - 1> - G1(m, t) - G2(f),
//
// with y_i = D^T z*_i + zeta_i = -div z*_i + zeta_i. The per-component
// constants zeta_i pair with the body mean of m_i; D^T alone only reaches
// mean-free forcings. With this Lagrangian
//
//   G1* = int |a|^2 / (2 (lambda3 + K)) + 1/2 int lambda3 - int beta,
//   a_i = -d_i lambda2 + H_i + beta (1 - 2t) e_i + y_i,
//   G2* = 1/2 || grad lambda2 - curl^T lambda1 ||^2,
//
// and the maximizers are m^ = a / (lambda3 + K), f^ = grad lambda2 -
// curl^T lambda1.

#include <array>
#include <vector>

#include "mmdual/field.hpp"
#include "mmdual/grid.hpp"
#include "mmdual/primal.hpp"

namespace mmdual {

/// Conjugate variable of the exchange pairing. rows[i] lives on Omega and
/// pairs with D m_i; mean[i] pairs with the body mean of m_i; boundary[i]
/// holds the normal trace of row i on each enumerated boundary face of
/// Omega (same order as Grid::boundary_faces()).
struct ZStar {
  std::array<VectorField3, 3> rows;
  Vec3 mean{0.0, 0.0, 0.0};
  std::array<std::vector<double>, 3> boundary;

  static ZStar zeros(const Grid& g);
};

struct DualState {
  VectorField3 lambda1;  // box
  ScalarField lambda2;   // box
  ScalarField lambda3;   // Omega
  ZStar zstar;
  ScalarField t;         // Omega

  /// lambda1 = lambda2 = 0, lambda3 constant, t = 1/2, z* = 0 projected.
  static DualState initial(const Grid& g, double lambda3_value);
};

struct KChoice {
  double K = 0.0;
  double spectral_bound = 0.0;
  double margin = 0.0;
};

constexpr double kFloorK = 1e-6;

/// K = alpha * lambda_max(D^T D) * (1 + margin), floored at kFloorK.
KChoice select_K(double alpha, const Grid& g, double margin);

/// Installs the choice on params (validated by ModelParams::set_K).
void apply_K(ModelParams& p, const KChoice& k);

/// y_i = -div z*_i + zeta_i on Omega.
VectorField3 zstar_forcing(const Grid& g, const ZStar& z);

struct FtildeResult {
  double value = 0.0;
  VectorField3 maximizer;  // m^ on Omega
};

/// sup_m sum_i <y_i, m_i> + G0(m) - K/2 <m, m>; solves
/// (K - alpha D^T D) m^_i = y_i by CG. Throws ConvergenceError.
FtildeResult ftilde_star(const Grid& g, const ZStar& z, double K, double alpha);

/// Debug switch for oracle sensitivity checks: flips the well term to
/// beta (1 + 2t) e.
struct ConjugateOptions {
  bool corrupt_well_sign = false;
};

/// Thrown when lambda3 + K <= 0 somewhere on Omega.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerator field a on Omega.
VectorField3 g1_numerator(const Grid& g, const DualState& d,
                          const ModelParams& p, const ConjugateOptions& o = {});

double g1_star(const Grid& g, const DualState& d, const ModelParams& p,
               const ConjugateOptions& o = {});

/// m^ = a / (lambda3 + K), the body maximizer inside G1*.
VectorField3 g1_maximizer(const Grid& g, const DualState& d,
                          const ModelParams& p);

double g2_star(const Grid& g, const DualState& d);
/// f^ = grad lambda2 - curl^T lambda1, the field maximizer inside G2*.
VectorField3 g2_maximizer(const Grid& g, const DualState& d);

struct DualValueParts {
  double ftilde = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double value = 0.0;
};

/// J*(lambda, z*, t). Requires A1 and boundary membership of z*.
DualValueParts dual_value_parts(const Grid& g, const DualState& d,
                                const ModelParams& p);
double dual_value(const Grid& g, const DualState& d, const ModelParams& p);

struct A1Report {
  bool member = false;
  double min_margin = 0.0;  // min (lambda3 + K)
};
A1Report in_A1(const DualState& d, double K);

struct A2Report {
  bool member = false;
  bool on_boundary = false;
  /// Smallest eigenvalue of m -> G0(m) + 1/2 <lambda3, |m|^2> relative to
  /// 1/2 <m, m>, i.e. of alpha D^T D + diag(lambda3).
  double min_eigenvalue = 0.0;
};
A2Report in_A2(const Grid& g, const DualState& d, double alpha,
               double tol = 1e-10);

/// Sets the boundary traces so that z*_i . n + lambda2 n_i = 0 on every
/// boundary face; everything else is left untouched.
ZStar project_zstar_boundary(const Grid& g, const ZStar& z,
                             const ScalarField& lambda2);

/// max |z*_i . n + lambda2 n_i| over boundary faces.
double zstar_boundary_residual(const Grid& g, const ZStar& z,
                               const ScalarField& lambda2);

}  // namespace mmdual
