#pragma once

#include <array>
#include <vector>

#include "sawmw/device.hpp"
#include "sawmw/operators.hpp"

namespace sawmw {

// Linear three-mode chain MW <-> (g-f transition) <-> SAW for input-output
// scattering. The qubit transition is treated as a linear mode, valid well
// below one excitation. All frequencies in Hz; the scattering matrix is
// invariant under the common Hz/angular scale.
struct LinearModeNetwork {
    std::array<double, 3> detuning_hz{0, 0, 0};      // Delta_m, Delta_f, Delta_s
    std::array<double, 3> total_rate_hz{0, 0, 0};    // gamma, kappa_f, Gamma
    std::array<double, 3> external_rate_hz{0, 0, 0}; // gamma_ex, 0, Gamma_ex
    double g_pm_hz = 0.0;                            // modes 1-2
    double g_ps_hz = 0.0;                            // modes 2-3

    void validate() const;

    /// Complex mode matrix M: diag(detuning - i rate/2) with the real
    /// symmetric tridiagonal couplings.
    Eigen::Matrix3cd mode_matrix() const;
};

/// Conversion network at the reference operating point of the device:
/// zero detunings, paper rates, couplings from the supplied drive amplitudes.
LinearModeNetwork conversion_network(const DeviceParams& p, double omega1_hz,
                                     double omega2_hz);

/// Two-port scattering matrix (ports: MW, SAW),
///   S(w) = I - i K (w I - M)^{-1} K^T,  K = diag port couplings,
/// with e^{-i w t} phasors. Symmetric (reciprocal) by construction.
Eigen::Matrix2cd s_matrix(const LinearModeNetwork& net, double probe_offset_hz);

/// On-resonance conversion efficiency
///   eta = eta_m eta_s 4 C_m C_s / (1 + C_m + C_s)^2.
double efficiency_on_resonance(double c_m, double c_s, double eta_m, double eta_s);

/// Cooperativity C = 4 g_p^2 / (mode_rate * kappa_f).
double cooperativity(double g_p_hz, double mode_rate_hz, double kappa_f_hz);

struct EfficiencyMap {
    std::vector<double> axis1_mw;  // drive-1 powers, mW
    std::vector<double> axis2_mw;  // drive-2 powers, mW
    std::vector<double> values;    // normalized efficiency, row-major [i1 * n2 + i2]
    double delta_p_hz = 0.0;       // single-photon detuning

    double at(std::size_t i1, std::size_t i2) const {
        return values[i1 * axis2_mw.size() + i2];
    }
    std::pair<std::size_t, std::size_t> argmax() const;
};

/// Sweeps both drive powers at fixed single-photon detuning delta_p (the
/// two-photon detuning is held at zero): per cell, drive amplitudes from the
/// port calibration, parametric couplings, the drive-induced f-level Stark
/// shift, and the normalized efficiency eta/(eta_m eta_s) from the S-matrix.
EfficiencyMap sweep_drive_powers(const DeviceParams& p, const CalibrationParams& cal,
                                 double delta_p_hz, const std::vector<double>& powers1_mw,
                                 const std::vector<double>& powers2_mw);

struct FluxLineOptions {
    // SAW frequency pull per intra-resonator phonon; 0 disables saturation.
    double pull_hz_per_phonon = 0.0;
};

/// Output MW photon flux for each input SAW phonon flux (quanta/s). With a
/// nonzero pull coefficient the SAW detuning follows the intra-resonator
/// phonon number self-consistently, which rolls the transfer off at high
/// flux. The eta-tilde = 1 bound corresponds to P_m = eta_m eta_s P_s.
std::vector<double> flux_transfer_line(const DeviceParams& p, const LinearModeNetwork& net,
                                       const std::vector<double>& input_flux,
                                       const FluxLineOptions& opt = {});

}  // namespace sawmw
