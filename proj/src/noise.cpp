#include "sawmw/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "sawmw/units.hpp"

namespace sawmw {

double AmplifierChain::total_gain_linear() const {
    double db = 0.0;
    for (const auto& [name, gain] : stages) {
        if (!std::isfinite(gain)) throw std::invalid_argument("AmplifierChain: non-finite gain");
        db += gain;
    }
    return db_to_linear(db);
}

double bose_einstein(double omega_hz, double temperature_k) {
    if (omega_hz <= 0) throw std::invalid_argument("bose_einstein: frequency must be positive");
    if (temperature_k < 0) throw std::invalid_argument("bose_einstein: negative temperature");
    if (temperature_k == 0.0) return 0.0;
    const double x = planck_h * omega_hz / (boltzmann_k * temperature_k);
    return 1.0 / std::expm1(x);
}

double effective_temperature(double occupation, double omega_hz) {
    if (occupation <= 0) throw std::invalid_argument("effective_temperature: occupation must be > 0");
    if (omega_hz <= 0) throw std::invalid_argument("effective_temperature: frequency must be positive");
    return planck_h * omega_hz / (boltzmann_k * std::log1p(1.0 / occupation));
}

namespace {

double conversion_response(const LinearModeNetwork& net, double gamma_ex,
                           double gamma_int, double nu) {
    const Eigen::Matrix3cd a =
        nu * Eigen::Matrix3cd::Identity() - net.mode_matrix();
    const Eigen::Matrix3cd g = a.partialPivLu().solve(Eigen::Matrix3cd::Identity());
    return gamma_ex * gamma_int * std::norm(g(0, 2));
}

}  // namespace

NoisePSD upconverted_psd(const DeviceParams& p, const LinearModeNetwork& net,
                         const ThermalBath& bath, const std::vector<double>& grid_hz,
                         double background) {
    bath.validate();
    net.validate();
    if (grid_hz.empty()) throw std::invalid_argument("upconverted_psd: empty grid");
    if (background < 0) throw std::invalid_argument("upconverted_psd: negative background");

    const double gamma_ex = net.external_rate_hz[0];
    const double gamma_int =
        p.saw.linewidth_total_hz - p.saw.ports * p.saw.linewidth_external_hz;
    const double n_bar = bose_einstein(bath.mode_frequency_hz, bath.temperature_k);

    NoisePSD psd;
    psd.offsets_hz = grid_hz;
    psd.background = background;
    psd.values.reserve(grid_hz.size());
    for (double nu : grid_hz)
        psd.values.push_back(conversion_response(net, gamma_ex, gamma_int, nu) * n_bar +
                             background);
    psd.validate();

    // Per-unit-occupation conversion peak: area and height of the narrow
    // up-converted resonance. The effective width Gamma (1 + C_s / (1 + C_m))
    // sets the integration window.
    const double kappa_f = net.total_rate_hz[1];
    const double c_m = cooperativity(net.g_pm_hz, net.total_rate_hz[0], kappa_f);
    const double c_s = cooperativity(net.g_ps_hz, net.total_rate_hz[2], kappa_f);
    const double width_eff = net.total_rate_hz[2] * (1.0 + c_s / (1.0 + c_m));
    const double center = net.detuning_hz[2];
    const double half_window = 250.0 * width_eff;
    const int n_steps = 25000;
    const double dnu = 2.0 * half_window / n_steps;
    double area = 0.0;
    double peak = 0.0;
    double prev = conversion_response(net, gamma_ex, gamma_int, center - half_window);
    for (int i = 1; i <= n_steps; ++i) {
        const double nu = center - half_window + i * dnu;
        const double cur = conversion_response(net, gamma_ex, gamma_int, nu);
        area += 0.5 * dnu * (prev + cur);
        peak = std::max(peak, cur);
        prev = cur;
    }
    psd.meta.conversion_area = area;
    psd.meta.conversion_peak = peak;
    psd.meta.bath_temperature_k = bath.temperature_k;
    psd.meta.bath_occupation = n_bar;
    return psd;
}

NoisePSD apply_chain(const NoisePSD& psd, const AmplifierChain& chain) {
    if (chain.noise_floor < 0) throw std::invalid_argument("apply_chain: negative floor");
    const double gain = chain.total_gain_linear();
    NoisePSD out = psd;
    for (double& v : out.values) v = gain * (v + chain.noise_floor);
    out.background = gain * (psd.background + chain.noise_floor);
    for (const auto& stage : chain.stages) out.meta.gains_applied.push_back(stage);
    return out;
}

double displacement_sensitivity(double x_zpf_m, double background, double conversion) {
    if (conversion <= 0) throw std::invalid_argument("displacement_sensitivity: zero conversion");
    if (background < 0 || x_zpf_m < 0)
        throw std::invalid_argument("displacement_sensitivity: negative input");
    return x_zpf_m * std::sqrt(background / conversion);
}

}  // namespace sawmw
