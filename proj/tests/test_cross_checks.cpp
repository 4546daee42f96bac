// Cross-module agreement: the dense Lindblad machinery against the linear
// input-output model, on the full three-mode conversion chain.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sawmw/cmt.hpp"
#include "sawmw/fit.hpp"
#include "sawmw/noise.hpp"
#include "sawmw/solvers.hpp"
#include "sawmw/spectrum.hpp"
#include "sawmw/units.hpp"

using namespace sawmw;

TEST_CASE("weak-input quantum conversion matches the linear S-matrix") {
    const DeviceConfig cfg = DeviceConfig::reference();
    const DeviceParams& d = cfg.device;
    const LinearModeNetwork net = conversion_network(d, cfg.cal.drive1_hz_per_sqrt_mw,
                                                     cfg.cal.drive2_hz_per_sqrt_mw);
    const double eta_linear = std::norm(s_matrix(net, 0.0)(0, 1));

    const HilbertConfig hc{4, 3, 4};
    const CMatrix a = embed(annihilator(hc.n_mw), Subsystem::mw, hc);
    const CMatrix c = embed(annihilator(hc.n_saw), Subsystem::saw, hc);
    const CMatrix sgf = embed(transmon_projector(0, 2, hc.n_qubit), Subsystem::qubit, hc);

    const double eps_hz = 0.1 * d.saw.linewidth_total_hz;
    CMatrix h = parametric_hamiltonian(net.g_pm_hz, net.g_ps_hz, {0, 0, 0}, hc);
    h += angular(eps_hz) * (c + c.adjoint()).eval();
    const Liouvillian lv = lindblad(h, {{a, angular(d.mw.linewidth_total_hz)},
                                        {c, angular(d.saw.linewidth_total_hz)},
                                        {sgf, angular(d.transmon.kappa_f_hz)}});
    const DensityState ss = steady_state(lv);
    const double n_a = ss.expectation((a.adjoint() * a).eval()).real();
    const double input_flux =
        angular(eps_hz) * angular(eps_hz) / angular(d.saw.linewidth_external_hz);
    const double eta_quantum = angular(d.mw.linewidth_external_hz) * n_a / input_flux;

    CHECK(eta_quantum == doctest::Approx(eta_linear).epsilon(0.02));
}

TEST_CASE("regression-theorem PSD agrees with the input-output PSD") {
    // Full Lindblad model of the conversion chain with a thermal SAW bath;
    // peak areas of the two routes agree within 3%.
    const DeviceConfig cfg = DeviceConfig::reference();
    const DeviceParams& d = cfg.device;
    const LinearModeNetwork net = conversion_network(d, cfg.cal.drive1_hz_per_sqrt_mw,
                                                     cfg.cal.drive2_hz_per_sqrt_mw);
    const ThermalBath bath{0.037, d.saw.omega_hz};
    const double n_bar = bose_einstein(bath.mode_frequency_hz, bath.temperature_k);

    const double kappa_f = d.transmon.kappa_f_hz;
    const double c_m = cooperativity(net.g_pm_hz, d.mw.linewidth_total_hz, kappa_f);
    const double c_s = cooperativity(net.g_ps_hz, d.saw.linewidth_total_hz, kappa_f);
    const double width_eff = d.saw.linewidth_total_hz * (1.0 + c_s / (1.0 + c_m));

    std::vector<double> grid;
    const int pts = 241;
    for (int i = 0; i < pts; ++i)
        grid.push_back(-10.0 * width_eff + 20.0 * width_eff * double(i) / double(pts - 1));

    // Input-output route.
    const NoisePSD linear = upconverted_psd(d, net, bath, grid, 0.0);
    const fit::LorentzianFit lf_linear = fit::fit_lorentzian(linear.offsets_hz, linear.values);

    // Quantum-regression route: gamma_ex S_{a^dag a}(nu) with the intrinsic
    // SAW rate feeding the bath.
    const HilbertConfig hc{3, 3, 5};
    const CMatrix a = embed(annihilator(hc.n_mw), Subsystem::mw, hc);
    const CMatrix c = embed(annihilator(hc.n_saw), Subsystem::saw, hc);
    const CMatrix sgf = embed(transmon_projector(0, 2, hc.n_qubit), Subsystem::qubit, hc);
    const CMatrix h = parametric_hamiltonian(net.g_pm_hz, net.g_ps_hz, {0, 0, 0}, hc);
    const double gamma_int = d.saw.linewidth_total_hz - d.saw.ports * d.saw.linewidth_external_hz;
    const double gamma_ext_total = d.saw.linewidth_total_hz - gamma_int;
    const Liouvillian lv =
        lindblad(h, {{a, angular(d.mw.linewidth_total_hz)},
                     {c, angular(gamma_int) * (n_bar + 1.0)},
                     {c.adjoint(), angular(gamma_int) * n_bar},
                     {c, angular(gamma_ext_total)},
                     {sgf, angular(d.transmon.kappa_f_hz)}});

    const NoisePSD quantum = two_time_psd(lv, a.adjoint(), a, grid);
    std::vector<double> scaled(quantum.values.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
        scaled[i] = angular(d.mw.linewidth_external_hz) * quantum.values[i];
    const fit::LorentzianFit lf_quantum = fit::fit_lorentzian(grid, scaled);

    CHECK(lf_quantum.area == doctest::Approx(lf_linear.area).epsilon(0.03));
    CHECK(lf_quantum.fwhm == doctest::Approx(lf_linear.fwhm).epsilon(0.03));
}
