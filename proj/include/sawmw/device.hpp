#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sawmw/hilbert.hpp"
#include "sawmw/operators.hpp"

namespace sawmw {

// All parameter fields are ordinary frequencies in Hz (SI elsewhere); matrix
// builders convert to angular rad/s on output.

struct TransmonParams {
    double e_c_hz = 230e6;
    double e_j_hz = 4100e6;
    double omega_e_hz = 2530e6;
    double omega_f_hz = 4830e6;
    double kappa_f_hz = 18e6;

    // alpha = omega_f - 2 omega_e, exact by construction.
    double alpha_hz() const { return omega_f_hz - 2.0 * omega_e_hz; }

    std::vector<std::string> warnings() const;
    void validate() const;
};

struct ResonatorParams {
    double omega_hz = 0.0;
    double linewidth_total_hz = 0.0;
    double linewidth_external_hz = 0.0;
    int ports = 1;

    /// External coupling factor eta = linewidth_external / linewidth_total.
    double eta() const { return linewidth_external_hz / linewidth_total_hz; }

    void validate() const;
};

struct CouplingParams {
    double g_mw_hz = 59e6;
    double g_saw_hz = 6.0e6;

    void validate() const;
};

struct GeometryParams {
    double c_idt_f = 67e-15;
    double c_total_f = 84e-15;
    double mode_area_m2 = 40000e-12;
    double phi0_v = 3.6e-6;
    double x_zpf_m = 7e-18;

    // V_zpf = phi0 * sqrt(1 um^2 / A), exact by construction.
    double v_zpf_v() const;

    void validate() const;
};

struct DriveTone {
    double frequency_hz = 0.0;
    double amplitude_hz = 0.0;  // Rabi-scale amplitude Omega/2pi
    std::string port = "2";

    void validate() const;
};

struct DeviceParams {
    TransmonParams transmon;
    ResonatorParams mw;
    ResonatorParams saw;
    CouplingParams coupling;
    GeometryParams geometry;

    void validate() const;
    std::vector<std::string> warnings() const;
};

// Knobs that are not device physics: per-port drive power calibration,
// measured Stark coefficients, the SAW frequency-pull model and the noise
// floor of the readout chain. All overridable through the config file.
struct CalibrationParams {
    // Omega/2pi produced by 1 mW at the drive port, per tone.
    double drive1_hz_per_sqrt_mw = 1.2e9;
    double drive2_hz_per_sqrt_mw = 1.0e9;
    // f-level Stark shift per squared drive amplitude, Delta_f = s * Omega^2.
    // Unset means: use the built-in three-level second-order estimate.
    std::optional<double> stark_s1_per_hz;
    std::optional<double> stark_s2_per_hz;
    // SAW resonator frequency pull per intra-resonator phonon.
    double saw_pull_hz_per_phonon = -3.0;
};

struct NoiseChainParams {
    double jpa_gain_db = 22.0;
    double twpa_gain_db = 14.0;
    double background = 2.4e-4;  // quanta s^-1 Hz^-1 at the resonator output plane
};

struct DeviceConfig {
    DeviceParams device;
    CalibrationParams cal;
    NoiseChainParams noise;

    /// All constants of the measured device this toolkit models.
    static DeviceConfig reference();
};

// ---- formulas ----

/// Asymptotic transmon estimates: omega_e = sqrt(8 E_J E_C) - E_C (energies
/// over h, in Hz), alpha = -E_C.
std::pair<double, double> transmon_levels(double e_j_hz, double e_c_hz);

/// Dispersive resonator pull chi = g^2 / (omega_e - omega_res), signed.
double dispersive_shift(double g_hz, double omega_e_hz, double omega_res_hz);

/// Stark shift of the qubit per intra-resonator quantum:
/// chi_q = 2 chi alpha / (omega_res - omega_e - alpha).
double stark_per_quantum(double chi_hz, double alpha_hz, double omega_res_hz,
                         double omega_e_hz);

/// Drive-induced parametric coupling between a resonator and the g-f
/// transition:
///   g_p = (1/sqrt 2) g alpha Omega / [(omega_e - omega_res)(omega_e + alpha - omega_res)]
/// Signed (flips with alpha); magnitudes are what enter cooperativities.
/// Returns the value in Hz; emits a warning through `warn` (if non-null) when
/// Omega exceeds the perturbative window.
double parametric_coupling(double g_hz, double alpha_hz, double omega_e_hz,
                           double omega_res_hz, double drive_amp_hz,
                           std::vector<std::string>* warn = nullptr);

/// Second-order Stark coefficient s(omega_d) of the f level (relative to g)
/// against a drive at omega_d, three-level ladder with the sqrt(2)-enhanced
/// e-f matrix element, co- and counter-rotating terms:
///   s = 1/2 [ 1/(w_fe + w_d) + 1/(w_fe - w_d) ]
///     - 1/4 [ 1/(w_d - w_e)  - 1/(w_d + w_e)  ]
/// with w_fe = omega_f - omega_e. Delta_f(Omega) = s * Omega^2.
double stark_coefficient(double omega_drive_hz, const TransmonParams& tr);

/// Total drive-induced f-level shift Delta_f = s1 Omega1^2 + s2 Omega2^2.
/// Coefficients fall back to stark_coefficient() when not overridden.
double stark_shift_of_f(const DriveTone& drive1, const DriveTone& drive2,
                        const DeviceParams& p,
                        std::optional<double> s1_override = std::nullopt,
                        std::optional<double> s2_override = std::nullopt);

/// Full lab-frame Hamiltonian of the hybrid system, H/hbar in rad/s:
/// resonator terms, transmon levels, and the g-e / sqrt(2)-enhanced e-f
/// exchange couplings to both resonators.
CMatrix build_hamiltonian(const DeviceParams& p, const HilbertConfig& cfg);

/// Rotating-frame parametric Hamiltonian, H/hbar in rad/s:
/// Delta_m a^dag a + Delta_f sigma_ff + Delta_s c^dag c
///   + g_pm (a sigma_fg + a^dag sigma_gf) + g_ps (c sigma_fg + c^dag sigma_gf).
/// Detunings ordered (MW, f, SAW), all in Hz.
CMatrix parametric_hamiltonian(double g_pm_hz, double g_ps_hz,
                               const std::array<double, 3>& detunings_hz,
                               const HilbertConfig& cfg);

struct GeometryCoupling {
    double g_saw_hz = 0.0;  // e V_zpf C_IDT / (h C): geometry estimate
    double v_zpf_v = 0.0;
    double x_zpf_m = 0.0;
};

/// Geometry chain: V_zpf from the surface potential and mode area, then the
/// IDT capacitive-divider coupling estimate. x_zpf is the supplied material
/// constant, passed through. The measured g_saw is the primary number; this
/// estimate is documentation-grade (they differ by ~1.7x for the reference
/// device).
GeometryCoupling coupling_from_geometry(const GeometryParams& geom);

/// Area scaling estimate g_saw ~ 0.7 GHz * sqrt(1 um^2 / A).
double coupling_area_scaling(double mode_area_m2);

// ---- config file I/O ----

/// Parses the flat key/value config format ("mw.omega = 5.05 GHz", '#'
/// comments). Starts from DeviceConfig::reference() and overrides listed
/// keys; unknown keys or malformed units are errors.
DeviceConfig parse_config(const std::string& text);
DeviceConfig load_config(const std::string& path);
std::string serialize_config(const DeviceConfig& cfg);

}  // namespace sawmw
