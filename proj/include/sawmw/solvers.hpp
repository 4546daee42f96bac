#pragma once

#include "sawmw/liouvillian.hpp"

namespace sawmw {

/// Steady state of a Lindblad generator: L rho = 0 with Tr rho = 1, solved as
/// a dense linear system with one row replaced by the trace condition.
/// Throws (with a reciprocal-condition estimate in the message) when the
/// null space is degenerate or the system ill-conditioned.
DensityState steady_state(const Liouvillian& lv);

/// Fourth-order explicit (RK4) integration of d(rho)/dt = L rho over duration
/// t with step dt. Requires dt * spectral_radius_bound(L) < 0.1.
DensityState evolve(const DensityState& rho0, const Liouvillian& lv, double t, double dt);

}  // namespace sawmw
