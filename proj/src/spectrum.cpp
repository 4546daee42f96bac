#include "sawmw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sawmw/solvers.hpp"
#include "sawmw/units.hpp"

namespace sawmw {

namespace {

// Tr[A X] without forming the product matrix.
Complex product_trace(const CMatrix& a, const CMatrix& x) {
    return (a.transpose().cwiseProduct(x)).sum();
}

CMatrix rk4_step(const Liouvillian& lv, const CMatrix& x, double h) {
    const CMatrix k1 = lv.apply(x);
    const CMatrix k2 = lv.apply(x + (0.5 * h) * k1);
    const CMatrix k3 = lv.apply(x + (0.5 * h) * k2);
    const CMatrix k4 = lv.apply(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

NoisePSD two_time_psd(const Liouvillian& lv, const CMatrix& a_op, const CMatrix& b_op,
                      const std::vector<double>& omega_grid_hz, const PsdOptions& opt) {
    if (omega_grid_hz.empty()) throw std::invalid_argument("two_time_psd: empty grid");
    for (std::size_t i = 1; i < omega_grid_hz.size(); ++i)
        if (omega_grid_hz[i] <= omega_grid_hz[i - 1])
            throw std::invalid_argument("two_time_psd: grid must be strictly increasing");

    const DensityState rho_ss = steady_state(lv);

    NoisePSD psd;
    psd.offsets_hz = omega_grid_hz;
    psd.values.assign(omega_grid_hz.size(), 0.0);

    CMatrix x = b_op * rho_ss.rho;
    const double g0 = std::abs(product_trace(a_op, x));
    if (g0 == 0.0) return psd;  // e.g. normal-ordered pair on vacuum

    double rate_fast = 0.0;
    double rate_slow = std::numeric_limits<double>::infinity();
    for (const auto& c : lv.collapses()) {
        if (c.rate <= 0.0) continue;
        rate_fast = std::max(rate_fast, c.rate);
        rate_slow = std::min(rate_slow, c.rate);
    }
    if (rate_fast == 0.0)
        throw std::runtime_error("two_time_psd: no dissipation, correlator cannot decay");
    double nu_max = 0.0;
    for (double f : omega_grid_hz) nu_max = std::max(nu_max, std::abs(f));
    rate_fast = std::max({rate_fast, lv.hamiltonian().norm(), angular(nu_max)});

    // Trapezoid step 1/(50 * max rate) resolves the fastest channel; once the
    // fast transients are gone (tau > 30 fast time constants) the remaining
    // dynamics lives on the slow envelope and the grid bandwidth, so the step
    // is coarsened accordingly, capped by RK4 stability on the generator.
    const double rho_est = lv.spectral_radius_estimate();
    const double stability_cap = rho_est > 0.0 ? 1.8 / rho_est : 1.0 / rate_fast;
    const double dt_fine = std::min(1.0 / (50.0 * rate_fast), stability_cap);
    const double tau_switch = 30.0 / rate_fast;
    double dt_coarse = stability_cap;
    if (nu_max > 0.0) dt_coarse = std::min(dt_coarse, 1.0 / (20.0 * nu_max));
    dt_coarse = std::max(dt_coarse, dt_fine);

    const double tau_max = opt.tau_max_slow_periods / rate_slow;
    const std::size_t n = omega_grid_hz.size();

    std::vector<Complex> acc(n, Complex(0, 0));
    std::vector<Complex> phase(n, Complex(1, 0));
    std::vector<Complex> rot(n);
    auto set_rotators = [&](double dt) {
        for (std::size_t k = 0; k < n; ++k) {
            const double w = angular(omega_grid_hz[k]);
            rot[k] = std::exp(Complex(0.0, w * dt));
        }
    };

    double dt = dt_fine;
    set_rotators(dt);
    Complex g_prev = product_trace(a_op, x);
    double tau = 0.0;
    int below = 0;
    const int below_needed = 64;
    bool decayed = false;

    while (tau < tau_max) {
        if (dt == dt_fine && tau >= tau_switch && dt_coarse > dt_fine) {
            dt = dt_coarse;
            set_rotators(dt);
        }
        x = rk4_step(lv, x, dt);
        tau += dt;
        const Complex g = product_trace(a_op, x);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ph_next = phase[k] * rot[k];
            acc[k] += 0.5 * dt * (phase[k] * g_prev + ph_next * g);
            phase[k] = ph_next;
        }
        g_prev = g;
        if (std::abs(g) > 100.0 * g0)
            throw std::runtime_error("two_time_psd: propagation unstable");
        if (std::abs(g) < opt.decay_threshold * g0) {
            if (++below >= below_needed) {
                decayed = true;
                break;
            }
        } else {
            below = 0;
        }
    }
    if (!decayed)
        throw std::runtime_error(
            "two_time_psd: correlator did not decay below threshold (no steady decay)");

    for (std::size_t k = 0; k < n; ++k) {
        double v = 2.0 * acc[k].real();
        if (v < 0.0 && v > -1e-9 * g0 / rate_slow) v = 0.0;  // quadrature dust
        psd.values[k] = v;
    }
    return psd;
}

}  // namespace sawmw
