#pragma once

#include "sawmw/liouvillian.hpp"
#include "sawmw/noise_types.hpp"

namespace sawmw {

struct PsdOptions {
    // Abort if the correlator has not decayed to decay_threshold of its
    // initial magnitude after tau_max_slow_periods / (slowest rate).
    double decay_threshold = 1e-8;
    double tau_max_slow_periods = 400.0;
};

/// Two-time spectrum via the quantum regression theorem:
///
///   S(nu) = 2 Re Integral_0^inf dtau e^{i 2 pi nu tau} Tr[A e^{L tau} (B rho_ss)]
///
/// The factor 2 completes the two-sided transform of the stationary
/// correlator, so that for (A, B) = (a^dag, a) the spectrum integrates to the
/// mode occupation over the frequency grid (in Hz). Evaluated by propagating
/// B rho_ss (RK4) with trapezoidal quadrature, step 1/(50 * max rate) while
/// the fast channels ring, then coarsened to the slow scale once they have
/// decayed. Throws if the correlator fails to decay (no steady state).
NoisePSD two_time_psd(const Liouvillian& lv, const CMatrix& a_op, const CMatrix& b_op,
                      const std::vector<double>& omega_grid_hz,
                      const PsdOptions& opt = {});

}  // namespace sawmw
