#pragma once

#include "sawmw/operators.hpp"

namespace sawmw {

// Density operator with the usual sanity tolerances. Numerically obtained
// steady states may carry eigenvalues down to -1e-8; anything worse is an
// error, not noise.
struct DensityState {
    CMatrix rho;

    double trace() const { return rho.trace().real(); }

    Complex expectation(const CMatrix& op) const { return (op * rho).trace(); }

    /// Throws if trace, Hermiticity or positivity are outside tolerance.
    void validate(double trace_tol = 1e-9, double herm_tol = 1e-10,
                  double eig_floor = -1e-8) const;
};

/// rho = |n><n| on a dim-dimensional space.
DensityState fock_state(int n, int dim);

/// Truncated Bose-Einstein (geometric) thermal state with parameter n_bar.
DensityState thermal_state(double n_bar, int dim);

double trace_distance(const DensityState& a, const DensityState& b);

}  // namespace sawmw
