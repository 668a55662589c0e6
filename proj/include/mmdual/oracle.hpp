#pragma once

// Brute-force references used to validate the closed-form conjugates and
// the dual bound. Nothing here relies on adjoint identities or the
// formulas in dual.hpp; objectives are assembled from primal primitives.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mmdual/dual.hpp"
#include "mmdual/grid.hpp"
#include "mmdual/primal.hpp"

namespace mmdual {

using Objective = std::function<double(std::span<const double>)>;

struct ConjugateProbe {
  std::size_t dimension = 0;
  Objective objective;
  std::vector<double> lo, hi;
  /// Coordinates whose bound is a genuine constraint; an argmax there is
  /// accepted instead of reported as a boundary hit.
  std::vector<bool> constrained;
  std::size_t refinement = 40;
  std::size_t coarse_points = 21;
};

struct SupResult {
  double value = 0.0;
  std::vector<double> argmax;
  std::size_t evaluations = 0;
};

/// The argmax sits on an unconstrained face of the search box.
class BoxBoundaryError : public std::runtime_error {
 public:
  BoxBoundaryError(const std::string& what, std::size_t coordinate)
      : std::runtime_error(what), coordinate(coordinate) {}
  std::size_t coordinate;
};

/// Coarse scan (tensor grid up to three coordinates, coordinate sweeps
/// beyond) followed by compass refinement with halving steps.
SupResult numeric_sup(const ConjugateProbe& probe);

/// Repeats numeric_sup with the box doubled about its center after every
/// boundary hit.
SupResult numeric_sup_expanding(ConjugateProbe probe,
                                std::size_t max_doublings = 12);

/// The objectives whose suprema define the conjugates: over m on Omega for
/// F~* and G1*, over f on the box for G2*.
double ftilde_objective(const Grid& g, const ZStar& z, double K, double alpha,
                        const VectorField3& m);
double g1_objective(const Grid& g, const DualState& d, const ModelParams& p,
                    const VectorField3& m);
double g2_objective(const Grid& g, const DualState& d, const VectorField3& f);

/// Numeric values of the three conjugates at the given dual point.
double oracle_ftilde_star(const Grid& g, const ZStar& z, double K, double alpha);
double oracle_g1_star(const Grid& g, const DualState& d, const ModelParams& p);
double oracle_g2_star(const Grid& g, const DualState& d);

struct BruteForceResult {
  VectorField3 m;
  ScalarField t;
  double value = 0.0;
  std::size_t restarts = 0;
};

/// Multistart projected descent of the primal energy over unit m (t picks
/// the lower well, f is the stray field). Best value found, hence an upper
/// bound on the true minimum. Requires at most 8 body cells.
BruteForceResult brute_force_primal(const ModelParams& p, const Grid& g,
                                    std::size_t restarts = 100,
                                    unsigned long long seed = 1);

}  // namespace mmdual
