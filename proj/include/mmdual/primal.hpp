#pragma once

#include <array>
#include <stdexcept>

#include "mmdual/field.hpp"
#include "mmdual/grid.hpp"

namespace mmdual {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Material constants, applied field and the coercivity shift K.
struct ModelParams {
  double alpha = 1.0;           // exchange constant
  double beta = 1.0;            // uniaxial anisotropy constant
  Vec3 easy_axis{0.0, 0.0, 1.0};
  VectorField3 H;               // applied field on Omega
  double K = 0.0;               // set through set_K
  double spectral_bound = 0.0;  // lambda_max(D^T D) the K was chosen against

  double feasibility_tol = 1e-8;
  double poisson_tol = 1e-10;

  /// Checks alpha, beta, |e| and the shape of H. Throws std::invalid_argument.
  void validate(const Grid& g) const;
  /// Installs K after checking K > alpha * spectral_bound (K > 0 when the
  /// bound vanishes).
  void set_K(double k, double bound);
  bool has_K() const { return K > 0.0; }
};

ModelParams make_params(const Grid& g, double alpha, double beta,
                        const Vec3& easy_axis, const Vec3& constant_H);

/// Magnetization, stray field and two-well selector.
struct PrimalState {
  VectorField3 m;  // Omega
  VectorField3 f;  // box
  ScalarField t;   // Omega, values in [0, 1]
};

double exchange_energy(const Grid& g, const VectorField3& m, double alpha);

/// beta (1 - |m . e|), the smaller of the two affine wells.
double anisotropy_density(const Vec3& m, double beta, const Vec3& e);

/// Integral of t g1(m) + (1 - t) g2(m) with g1 = beta (1 + m.e),
/// g2 = beta (1 - m.e). Throws when t leaves [0, 1].
double relaxed_anisotropy(const Grid& g, const VectorField3& m,
                          const ScalarField& t, double beta, const Vec3& e);

/// Integral of the two-well density beta (1 - |m.e|).
double anisotropy_energy(const Grid& g, const VectorField3& m, double beta,
                         const Vec3& e);

double zeeman_energy(const Grid& g, const VectorField3& m,
                     const VectorField3& H);

/// Stray field f = grad u with -div grad u = -div(m chi_Omega) and u = 0
/// outside the box. curl f vanishes by construction. Throws
/// ConvergenceError if the Poisson residual stays above `tol`.
VectorField3 stray_field(const Grid& g, const VectorField3& m,
                         double tol = 1e-10);

struct EnergyReport {
  double exchange = 0.0;
  double anisotropy = 0.0;  // relaxed, with the state's t
  double zeeman = 0.0;
  double magnetostatic = 0.0;
  double total = 0.0;

  // K-shifted split: (G0 - K/2 <m,m>) + G1 + G2.
  double shifted_g0 = 0.0;
  double shifted_g1 = 0.0;
  double shifted_g2 = 0.0;
  double shifted_total = 0.0;
  bool split_consistent = false;
};

/// Energy terms of the state. Requires params.K for the shifted split (K = 0
/// gives the trivial split). Throws std::invalid_argument on grid mismatch.
EnergyReport total_energy(const Grid& g, const PrimalState& s,
                          const ModelParams& p);

struct ConstraintResiduals {
  double r0 = 0.0;  // max | |m| - 1 |
  double r1 = 0.0;  // || div(-f + m chi) ||
  double r2 = 0.0;  // || curl f ||

  bool feasible(double tol) const { return r0 <= tol && r1 <= tol && r2 <= tol; }
};

ConstraintResiduals constraint_residuals(const Grid& g, const PrimalState& s);

/// A cell of zero magnitude cannot be normalized.
class ZeroMagnitudeError : public std::invalid_argument {
 public:
  explicit ZeroMagnitudeError(std::size_t cell);
  std::size_t cell;
};

VectorField3 project_unit_sphere(const VectorField3& m);

}  // namespace mmdual
