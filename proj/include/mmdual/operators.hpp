#pragma once

// Discrete differential operators on the collocated lattice.
//
// Box operators treat values outside the box as zero (zero outer boundary).
// Forward differences give the gradient; the divergence is its exact
// negative transpose, and curl uses the same forward differences so that
// curl(gradient(u)) cancels term by term. Body operators (omega_*) only
// difference pairs of cells that both lie in Omega, so constants have zero
// gradient there.

#include "mmdual/field.hpp"
#include "mmdual/grid.hpp"

namespace mmdual {

VectorField3 gradient(const Grid& g, const ScalarField& u);
ScalarField divergence(const Grid& g, const VectorField3& v);
VectorField3 curl(const Grid& g, const VectorField3& v);
VectorField3 curl_adjoint(const Grid& g, const VectorField3& w);

VectorField3 omega_gradient(const Grid& g, const ScalarField& u);
ScalarField omega_divergence(const Grid& g, const VectorField3& v);

/// D^T D u for the body gradient D: a non-negative discrete Laplacian with
/// natural (zero-flux) conditions on the body boundary.
void omega_dtd_apply(const Grid& g, const double* u, double* out);

/// Largest eigenvalue of D^T D for the body gradient, by power iteration
/// to the given relative tolerance. Throws ConvergenceError.
double operator_norm_sq(const Grid& g, double rel_tol = 1e-8);

}  // namespace mmdual
