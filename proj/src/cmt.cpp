#include "sawmw/cmt.hpp"

#include <cmath>
#include <stdexcept>

#include "sawmw/units.hpp"

namespace sawmw {

void LinearModeNetwork::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (total_rate_hz[i] < 0 || external_rate_hz[i] < 0)
            throw std::invalid_argument("LinearModeNetwork: negative rate");
        if (external_rate_hz[i] > total_rate_hz[i])
            throw std::invalid_argument("LinearModeNetwork: external rate exceeds total");
    }
    if (external_rate_hz[1] != 0.0)
        throw std::invalid_argument("LinearModeNetwork: the qubit mode has no port");
}

Eigen::Matrix3cd LinearModeNetwork::mode_matrix() const {
    const Complex mi(0.0, -0.5);
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    for (int i = 0; i < 3; ++i) m(i, i) = detuning_hz[i] + mi * total_rate_hz[i];
    m(0, 1) = m(1, 0) = g_pm_hz;
    m(1, 2) = m(2, 1) = g_ps_hz;
    return m;
}

LinearModeNetwork conversion_network(const DeviceParams& p, double omega1_hz,
                                     double omega2_hz) {
    p.validate();
    LinearModeNetwork net;
    net.total_rate_hz = {p.mw.linewidth_total_hz, p.transmon.kappa_f_hz,
                         p.saw.linewidth_total_hz};
    net.external_rate_hz = {p.mw.linewidth_external_hz, 0.0, p.saw.linewidth_external_hz};
    const double alpha = p.transmon.alpha_hz();
    const double we = p.transmon.omega_e_hz;
    net.g_pm_hz = parametric_coupling(p.coupling.g_mw_hz, alpha, we, p.mw.omega_hz, omega1_hz);
    net.g_ps_hz = parametric_coupling(p.coupling.g_saw_hz, alpha, we, p.saw.omega_hz, omega2_hz);
    return net;
}

Eigen::Matrix2cd s_matrix(const LinearModeNetwork& net, double probe_offset_hz) {
    net.validate();
    const Eigen::Matrix3cd m = net.mode_matrix();
    Eigen::Matrix3cd a = probe_offset_hz * Eigen::Matrix3cd::Identity() - m;

    Eigen::PartialPivLU<Eigen::Matrix3cd> lu(a);
    // Only an entirely lossless network can make (wI - M) singular.
    if (std::abs(lu.determinant()) <
        1e-12 * std::max(1.0, std::pow(a.cwiseAbs().maxCoeff(), 3)))
        throw std::runtime_error("s_matrix: singular mode matrix (no damping)");
    const Eigen::Matrix3cd g = lu.solve(Eigen::Matrix3cd::Identity());

    Eigen::Matrix<Complex, 2, 3> k = Eigen::Matrix<Complex, 2, 3>::Zero();
    k(0, 0) = std::sqrt(net.external_rate_hz[0]);
    k(1, 2) = std::sqrt(net.external_rate_hz[2]);

    const Complex i_unit(0.0, 1.0);
    return Eigen::Matrix2cd::Identity() - i_unit * (k * g * k.transpose());
}

double efficiency_on_resonance(double c_m, double c_s, double eta_m, double eta_s) {
    if (c_m < 0 || c_s < 0) throw std::invalid_argument("efficiency: negative cooperativity");
    if (eta_m < 0 || eta_m > 1 || eta_s < 0 || eta_s > 1)
        throw std::invalid_argument("efficiency: eta outside [0, 1]");
    const double denom = 1.0 + c_m + c_s;
    return eta_m * eta_s * 4.0 * c_m * c_s / (denom * denom);
}

double cooperativity(double g_p_hz, double mode_rate_hz, double kappa_f_hz) {
    if (mode_rate_hz <= 0 || kappa_f_hz <= 0)
        throw std::invalid_argument("cooperativity: rates must be positive");
    return 4.0 * g_p_hz * g_p_hz / (mode_rate_hz * kappa_f_hz);
}

std::pair<std::size_t, std::size_t> EfficiencyMap::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return {best / axis2_mw.size(), best % axis2_mw.size()};
}

EfficiencyMap sweep_drive_powers(const DeviceParams& p, const CalibrationParams& cal,
                                 double delta_p_hz, const std::vector<double>& powers1_mw,
                                 const std::vector<double>& powers2_mw) {
    if (powers1_mw.empty() || powers2_mw.empty())
        throw std::invalid_argument("sweep_drive_powers: empty grid");
    p.validate();

    const double eta_m = p.mw.eta();
    const double eta_s = p.saw.eta();
    const double norm = eta_m * eta_s;
    if (norm <= 0)
        throw std::invalid_argument("sweep_drive_powers: zero external coupling");

    const double f_d1 = p.mw.omega_hz - p.transmon.omega_f_hz + delta_p_hz;
    const double f_d2 = p.transmon.omega_f_hz - p.saw.omega_hz - delta_p_hz;

    EfficiencyMap map;
    map.axis1_mw = powers1_mw;
    map.axis2_mw = powers2_mw;
    map.delta_p_hz = delta_p_hz;
    map.values.resize(powers1_mw.size() * powers2_mw.size());

    for (std::size_t i = 0; i < powers1_mw.size(); ++i) {
        const double omega1 = cal.drive1_hz_per_sqrt_mw * std::sqrt(std::max(0.0, powers1_mw[i]));
        for (std::size_t j = 0; j < powers2_mw.size(); ++j) {
            const double omega2 =
                cal.drive2_hz_per_sqrt_mw * std::sqrt(std::max(0.0, powers2_mw[j]));

            LinearModeNetwork net = conversion_network(p, omega1, omega2);
            const DriveTone d1{f_d1, omega1, "2"};
            const DriveTone d2{f_d2, omega2, "2"};
            const double stark =
                stark_shift_of_f(d1, d2, p, cal.stark_s1_per_hz, cal.stark_s2_per_hz);
            // Two-photon detuning held at zero: MW and SAW stay on frame
            // resonance, the f level carries delta_p plus its own Stark pull.
            net.detuning_hz = {0.0, delta_p_hz + stark, 0.0};

            const Eigen::Matrix2cd s = s_matrix(net, 0.0);
            map.values[i * powers2_mw.size() + j] = std::norm(s(0, 1)) / norm;
        }
    }
    return map;
}

std::vector<double> flux_transfer_line(const DeviceParams& p, const LinearModeNetwork& net,
                                       const std::vector<double>& input_flux,
                                       const FluxLineOptions& opt) {
    p.validate();
    std::vector<double> out;
    out.reserve(input_flux.size());
    const double gamma_ex_s = net.external_rate_hz[2];
    for (double flux : input_flux) {
        if (flux < 0) throw std::invalid_argument("flux_transfer_line: negative flux");
        LinearModeNetwork shifted = net;
        if (opt.pull_hz_per_phonon != 0.0 && flux > 0.0) {
            // Intra-resonator phonon number pulls the SAW frequency; iterate
            // to the self-consistent detuning (converges in a few rounds for
            // physical pull strengths).
            double delta_s = 0.0;
            for (int it = 0; it < 12; ++it) {
                shifted.detuning_hz[2] = net.detuning_hz[2] + delta_s;
                const Eigen::Matrix3cd m = shifted.mode_matrix();
                const Eigen::Matrix3cd g =
                    (-m).partialPivLu().solve(Eigen::Matrix3cd::Identity());
                // n_s = Gamma_ex |G_33|^2 flux in angular units; the Hz-based
                // Green function used here carries an extra factor 2 pi.
                const double n_s = gamma_ex_s * std::norm(g(2, 2)) * flux / two_pi;
                const double next = opt.pull_hz_per_phonon * n_s;
                if (std::abs(next - delta_s) < 1e-6 * std::max(1.0, std::abs(next))) {
                    delta_s = next;
                    break;
                }
                delta_s = 0.5 * (delta_s + next);  // damped update
            }
            shifted.detuning_hz[2] = net.detuning_hz[2] + delta_s;
        }
        const Eigen::Matrix2cd s = s_matrix(shifted, 0.0);
        out.push_back(std::norm(s(0, 1)) * flux);
    }
    return out;
}

}  // namespace sawmw
