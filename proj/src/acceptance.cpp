#include "sawmw/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "sawmw/cmt.hpp"
#include "sawmw/fit.hpp"
#include "sawmw/noise.hpp"
#include "sawmw/rng.hpp"
#include "sawmw/scenarios.hpp"
#include "sawmw/solvers.hpp"
#include "sawmw/units.hpp"

namespace sawmw {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool within_rel(double got, double expected, double tol) {
    return std::abs(got - expected) <= tol * std::abs(expected);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void stamp_runtime(CriterionResult& r, const Timer& t, double budget_s) {
    const double dt = t.seconds();
    r.note += (r.note.empty() ? "" : "; ") + std::string("runtime ") + fmt(dt) + " s (budget " +
              fmt(budget_s) + " s)";
    if (dt > budget_s) {
        r.pass = false;
        r.note += " EXCEEDED";
    }
}

// 1. Drive-induced parametric coupling strengths at the operating amplitudes.
CriterionResult c1_parametric_coupling(const DeviceConfig& cfg) {
    const DeviceParams& d = cfg.device;
    const double g1 = parametric_coupling(d.coupling.g_mw_hz, d.transmon.alpha_hz(),
                                          d.transmon.omega_e_hz, d.mw.omega_hz,
                                          cfg.cal.drive1_hz_per_sqrt_mw);
    const double g2 = parametric_coupling(d.coupling.g_saw_hz, d.transmon.alpha_hz(),
                                          d.transmon.omega_e_hz, d.saw.omega_hz,
                                          cfg.cal.drive2_hz_per_sqrt_mw);
    CriterionResult r{1, "parametric coupling strengths"};
    r.expected = "|g_pm| = 1.6 MHz, |g_ps| = 0.37 MHz";
    r.got = "|g_pm| = " + fmt(std::abs(g1) / 1e6) + " MHz, |g_ps| = " +
            fmt(std::abs(g2) / 1e6) + " MHz";
    r.tolerance = "5% / 2%";
    r.pass = within_rel(std::abs(g1), 1.6e6, 0.05) && within_rel(std::abs(g2), 0.37e6, 0.02);
    return r;
}

// 2. Cooperativity of the SAW-qubit pair at the operating point.
CriterionResult c2_cooperativity(const DeviceConfig& cfg) {
    const DeviceParams& d = cfg.device;
    const double g2 = parametric_coupling(d.coupling.g_saw_hz, d.transmon.alpha_hz(),
                                          d.transmon.omega_e_hz, d.saw.omega_hz,
                                          cfg.cal.drive2_hz_per_sqrt_mw);
    const double c = cooperativity(std::abs(g2), d.saw.linewidth_total_hz,
                                   d.transmon.kappa_f_hz);
    CriterionResult r{2, "cooperativity at the operating point"};
    r.expected = "C_s = 0.82";
    r.got = "C_s = " + fmt(c);
    r.tolerance = "1%";
    r.pass = within_rel(c, 0.82, 0.01);
    return r;
}

// 3. Conversion peak factor at equal cooperativities.
CriterionResult c3_peak_factor() {
    const double eta = efficiency_on_resonance(0.82, 0.82, 1.0, 1.0);
    CriterionResult r{3, "conversion peak factor"};
    r.expected = "0.39";
    r.got = fmt(eta);
    r.tolerance = "2%";
    r.pass = within_rel(eta, 0.39, 0.02);
    r.note = "4 C_m C_s / (1 + C_m + C_s)^2 at C = 0.82 evaluates to " + fmt(eta);
    return r;
}

// 4. Scattering matrix equals the closed-form efficiency on resonance.
CriterionResult c4_closed_form() {
    Timer timer;
    GaussianStream rng(404);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        LinearModeNetwork net;
        const double gamma = 1e5 + 1.9e6 * rng.uniform();
        const double kappa = 5e6 + 2.5e7 * rng.uniform();
        const double big_gamma = 1e4 + 9e4 * rng.uniform();
        net.total_rate_hz = {gamma, kappa, big_gamma};
        net.external_rate_hz = {gamma * (0.05 + 0.95 * rng.uniform()), 0.0,
                                big_gamma * (0.05 + 0.95 * rng.uniform())};
        net.g_pm_hz = 5e4 + 5e6 * rng.uniform();
        net.g_ps_hz = 5e4 + 5e6 * rng.uniform();

        const double s21 = std::norm(s_matrix(net, 0.0)(0, 1));
        const double closed = efficiency_on_resonance(
            cooperativity(net.g_pm_hz, gamma, kappa),
            cooperativity(net.g_ps_hz, big_gamma, kappa),
            net.external_rate_hz[0] / gamma, net.external_rate_hz[2] / big_gamma);
        worst = std::max(worst, std::abs(s21 - closed) / closed);
    }
    CriterionResult r{4, "S-matrix matches the closed form on resonance"};
    r.expected = "relative difference < 1e-9 over 100 draws";
    r.got = "worst relative difference " + fmt(worst);
    r.tolerance = "1e-9";
    r.pass = worst < 1e-9;
    stamp_runtime(r, timer, 1.0);
    return r;
}

// 5. Full Lindblad steady-state conversion against the linear model.
CriterionResult c5_lindblad_agreement(const DeviceConfig& cfg) {
    Timer timer;
    const DeviceParams& d = cfg.device;
    const LinearModeNetwork net = conversion_network(d, cfg.cal.drive1_hz_per_sqrt_mw,
                                                     cfg.cal.drive2_hz_per_sqrt_mw);
    const double eta_linear = std::norm(s_matrix(net, 0.0)(0, 1));

    const double eps_hz = 0.1 * d.saw.linewidth_total_hz;  // weak coherent input
    auto quantum_efficiency = [&](const HilbertConfig& hc) {
        const CMatrix a = embed(annihilator(hc.n_mw), Subsystem::mw, hc);
        const CMatrix c = embed(annihilator(hc.n_saw), Subsystem::saw, hc);
        const CMatrix sgf = embed(transmon_projector(0, 2, hc.n_qubit), Subsystem::qubit, hc);
        CMatrix h = parametric_hamiltonian(net.g_pm_hz, net.g_ps_hz, {0, 0, 0}, hc);
        h += angular(eps_hz) * (c + c.adjoint());
        const Liouvillian lv = lindblad(
            h, {{a, angular(d.mw.linewidth_total_hz)},
                {c, angular(d.saw.linewidth_total_hz)},
                {sgf, angular(d.transmon.kappa_f_hz)}});
        const DensityState ss = steady_state(lv);
        const double n_a = ss.expectation((a.adjoint() * a).eval()).real();
        const double input_flux =
            angular(eps_hz) * angular(eps_hz) / angular(d.saw.linewidth_external_hz);
        return angular(d.mw.linewidth_external_hz) * n_a / input_flux;
    };

    const double eta_443 = quantum_efficiency(HilbertConfig{4, 3, 4});
    const double eta_553 = quantum_efficiency(HilbertConfig{5, 3, 5});

    CriterionResult r{5, "Lindblad vs coupled-mode conversion efficiency"};
    r.expected = "linear model eta = " + fmt(eta_linear);
    r.got = "quantum eta = " + fmt(eta_443) + " at (4,3,4), " + fmt(eta_553) + " at (5,3,5)";
    r.tolerance = "2% agreement, 0.5% truncation drift";
    r.pass = within_rel(eta_443, eta_linear, 0.02) && within_rel(eta_553, eta_443, 0.005);
    stamp_runtime(r, timer, 60.0);
    return r;
}

// 6. Thermal occupation round trip.
CriterionResult c6_thermal(const DeviceConfig& cfg) {
    const double nu = cfg.device.saw.omega_hz;
    const double n37 = bose_einstein(nu, 0.037);
    const double n85 = bose_einstein(nu, 0.085);
    const double t37 = effective_temperature(n37, nu);
    const double t85 = effective_temperature(n85, nu);
    CriterionResult r{6, "thermal occupation round trip"};
    r.expected = "n(37 mK) = 0.57 +- 0.07, n(85 mK) = 1.8 +- 0.2, inverse within 0.5 mK";
    r.got = "n(37 mK) = " + fmt(n37) + ", n(85 mK) = " + fmt(n85) + ", T(n) = " +
            fmt(t37 * 1e3) + " / " + fmt(t85 * 1e3) + " mK";
    r.tolerance = "absolute bands as stated";
    r.pass = std::abs(n37 - 0.57) <= 0.07 && std::abs(n85 - 1.8) <= 0.2 &&
             std::abs(t37 - 0.037) <= 0.5e-3 && std::abs(t85 - 0.085) <= 0.5e-3;
    return r;
}

// 7. Up-converted thermal peak extraction with seeded noise.
CriterionResult c7_psd_pipeline(const DeviceConfig& cfg) {
    Timer timer;
    const DeviceParams& d = cfg.device;
    const LinearModeNetwork net = conversion_network(d, cfg.cal.drive1_hz_per_sqrt_mw,
                                                     cfg.cal.drive2_hz_per_sqrt_mw);
    const ThermalBath bath{0.037, d.saw.omega_hz};

    const double kappa_f = d.transmon.kappa_f_hz;
    const double c_m = cooperativity(net.g_pm_hz, d.mw.linewidth_total_hz, kappa_f);
    const double c_s = cooperativity(net.g_ps_hz, d.saw.linewidth_total_hz, kappa_f);
    const double width_eff = d.saw.linewidth_total_hz * (1.0 + c_s / (1.0 + c_m));

    std::vector<double> grid;
    const int n = 641;
    for (int i = 0; i < n; ++i)
        grid.push_back(-15.0 * width_eff + 30.0 * width_eff * double(i) / double(n - 1));

    const NoisePSD model = upconverted_psd(d, net, bath, grid, cfg.noise.background);
    const double peak = model.meta.conversion_peak * model.meta.bath_occupation;

    const fit::LorentzianFit ref = fit::fit_lorentzian(model.offsets_hz, model.values);

    GaussianStream rng(7001);
    std::vector<double> noisy(model.values.size());
    for (std::size_t i = 0; i < noisy.size(); ++i)
        noisy[i] = model.values[i] + 0.05 * peak * rng.gaussian();
    const fit::LorentzianFit lf = fit::fit_lorentzian(model.offsets_hz, noisy);

    const double n_fit = lf.area / model.meta.conversion_area;
    CriterionResult r{7, "thermal-peak extraction pipeline"};
    r.expected = "width " + fmt(ref.fwhm / 1e3) + " kHz, <n_s> = 0.57";
    r.got = "width " + fmt(lf.fwhm / 1e3) + " kHz, <n_s> = " + fmt(n_fit);
    r.tolerance = "2% width, occupation +- 0.02";
    r.pass = within_rel(lf.fwhm, ref.fwhm, 0.02) && std::abs(n_fit - 0.57) <= 0.02;
    r.note = "model peak width / bare linewidth = " + fmt(ref.fwhm / d.saw.linewidth_total_hz);
    stamp_runtime(r, timer, 10.0);
    return r;
}

// 8. Efficiency ridge follows the constant-f-shift line in power coordinates.
CriterionResult c8_ridge(const DeviceConfig& cfg) {
    Timer timer;
    CalibrationParams cal;
    cal.drive1_hz_per_sqrt_mw = 150e6;
    cal.drive2_hz_per_sqrt_mw = 150e6;
    cal.stark_s1_per_hz = -4.8e-9;
    cal.stark_s2_per_hz = -4.8e-9;
    const double delta_p = 80e6;

    const int n = 50;
    std::vector<double> powers(n);
    for (int i = 0; i < n; ++i) powers[i] = double(i) / double(n - 1);  // mW
    const double cell = powers[1] - powers[0];

    const EfficiencyMap map = sweep_drive_powers(cfg.device, cal, delta_p, powers, powers);

    // Row-wise maxima, interior only (the arc leaves the grid for large P1).
    std::vector<double> ridge_p1, ridge_p2;
    for (int i = 0; i < n; ++i) {
        int jbest = 0;
        for (int j = 1; j < n; ++j)
            if (map.at(i, j) > map.at(i, jbest)) jbest = j;
        if (jbest == 0 || jbest == n - 1) continue;
        ridge_p1.push_back(powers[i]);
        ridge_p2.push_back(powers[jbest]);
    }

    CriterionResult r{8, "efficiency ridge on a constant-shift power line"};
    if (ridge_p1.size() < 10) {
        r.expected = ">= 10 interior ridge points";
        r.got = std::to_string(ridge_p1.size());
        r.pass = false;
        return r;
    }
    const fit::LinearFit line = fit::fit_linear(ridge_p1, ridge_p2);
    double worst_perp = 0.0;
    for (std::size_t k = 0; k < ridge_p1.size(); ++k) {
        const double resid = ridge_p2[k] - (line.slope * ridge_p1[k] + line.intercept);
        worst_perp = std::max(worst_perp,
                              std::abs(resid) / std::sqrt(1.0 + line.slope * line.slope));
    }
    // Analytic contour: s (O1^2 + O2^2) + delta_p = 0 -> P1 + P2 = const.
    const double contour_sum =
        delta_p / (-cal.stark_s1_per_hz.value() * cal.drive1_hz_per_sqrt_mw *
                   cal.drive1_hz_per_sqrt_mw);
    r.expected = "ridge on a straight line (slope -1, P1+P2 = " + fmt(contour_sum) + " mW)";
    r.got = "slope " + fmt(line.slope) + ", intercept " + fmt(line.intercept) +
            " mW, worst perpendicular deviation " + fmt(worst_perp / cell) + " cells over " +
            std::to_string(ridge_p1.size()) + " points";
    r.tolerance = "< 1 grid cell";
    r.pass = worst_perp < cell && std::abs(line.slope + 1.0) < 0.1 &&
             std::abs(line.intercept - contour_sum) < 2.0 * cell;
    stamp_runtime(r, timer, 30.0);
    return r;
}

// 9. External coupling factors.
CriterionResult c9_eta(const DeviceConfig& cfg) {
    const double eta_m = cfg.device.mw.eta();
    const double eta_s = cfg.device.saw.eta();
    CriterionResult r{9, "external coupling factors"};
    r.expected = "eta_m = 0.20, eta_s = 1.6e-3";
    r.got = "eta_m = " + fmt(eta_m) + ", eta_s = " + fmt(eta_s);
    r.tolerance = "10%";
    r.pass = within_rel(eta_m, 0.20, 0.10) && within_rel(eta_s, 1.6e-3, 0.10);
    return r;
}

// 10. Transmon level estimates from the charging and Josephson energies.
CriterionResult c10_transmon(const DeviceConfig& cfg) {
    const auto [omega_e, alpha] =
        transmon_levels(cfg.device.transmon.e_j_hz, cfg.device.transmon.e_c_hz);
    CriterionResult r{10, "transmon level estimates"};
    r.expected = "omega_e = 2.53 GHz (1%), alpha = -E_C exactly";
    r.got = "omega_e = " + fmt(omega_e / 1e9) + " GHz, alpha = " + fmt(alpha / 1e6) + " MHz";
    r.tolerance = "1% / exact";
    r.pass = within_rel(omega_e, 2.53e9, 0.01) && alpha == -cfg.device.transmon.e_c_hz;
    return r;
}

// 11. Zero-point geometry chain.
CriterionResult c11_geometry(const DeviceConfig& cfg) {
    const GeometryCoupling gc = coupling_from_geometry(cfg.device.geometry);
    const double eq4 = coupling_area_scaling(cfg.device.geometry.mode_area_m2);
    CriterionResult r{11, "zero-point geometry chain"};
    r.expected = "V_zpf = 18 nV";
    r.got = "V_zpf = " + fmt(gc.v_zpf_v * 1e9) + " nV";
    r.tolerance = "1e-12 relative";
    r.pass = within_rel(gc.v_zpf_v, 18e-9, 1e-12);
    r.note = "geometry estimates g_saw = " + fmt(gc.g_saw_hz / 1e6) + " MHz (capacitive chain), " +
             fmt(eq4 / 1e6) + " MHz (area scaling) vs measured " +
             fmt(cfg.device.coupling.g_saw_hz / 1e6) +
             " MHz; the measured value is primary, the estimates are reported, not asserted";
    return r;
}

// 12. Fit recovery and 1/sqrt(N) error scaling.
CriterionResult c12_fitting() {
    Timer timer;
    GaussianStream rng(1212);
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    auto draw_signed = [&](double lo, double hi) {
        return (rng.uniform() < 0.5 ? -1.0 : 1.0) * draw(lo, hi);
    };

    double worst = 0.0;
    std::string failure;
    const int n_pts = 201;
    std::vector<double> x(n_pts);
    for (int i = 0; i < n_pts; ++i) x[i] = double(i) / double(n_pts - 1);

    for (int trial = 0; trial < 100 && failure.empty(); ++trial) {
        // Lorentzian
        {
            const double c = draw(0.3, 0.7), w = draw(0.05, 0.2);
            const double a = draw_signed(0.5, 2.0), b = draw_signed(0.2, 1.0);
            std::vector<double> y(n_pts);
            for (int i = 0; i < n_pts; ++i) y[i] = fit::lorentzian_model(x[i], c, w, a, b);
            const fit::LorentzianFit f = fit::fit_lorentzian(x, y);
            const double err = std::max({std::abs(f.center - c) / std::abs(c),
                                         std::abs(f.fwhm - w) / w,
                                         std::abs(f.area - a) / std::abs(a),
                                         std::abs(f.offset - b) / std::abs(b)});
            worst = std::max(worst, err);
            if (err > 1e-6) failure = "lorentzian trial " + std::to_string(trial);
        }
        // Fano
        {
            const double c = draw(0.3, 0.7), w = draw(0.05, 0.2);
            const double a = draw_signed(0.5, 2.0), b = draw_signed(0.2, 1.0);
            const double q = draw_signed(0.5, 3.0);
            std::vector<double> y(n_pts);
            for (int i = 0; i < n_pts; ++i) y[i] = fit::fano_model(x[i], c, w, a, b, q);
            const fit::FanoFit f = fit::fit_fano(x, y);
            const double err = std::max({std::abs(f.center - c) / std::abs(c),
                                         std::abs(f.fwhm - w) / w,
                                         std::abs(f.amplitude - a) / std::abs(a),
                                         std::abs(f.offset - b) / std::abs(b),
                                         std::abs(f.q - q) / std::abs(q)});
            worst = std::max(worst, err);
            if (err > 1e-6) failure = "fano trial " + std::to_string(trial);
        }
        // Linear
        {
            const double m = draw_signed(0.5, 3.0), b = draw_signed(0.2, 2.0);
            std::vector<double> y(n_pts);
            for (int i = 0; i < n_pts; ++i) y[i] = m * x[i] + b;
            const fit::LinearFit f = fit::fit_linear(x, y);
            const double err = std::max(std::abs(f.slope - m) / std::abs(m),
                                        std::abs(f.intercept - b) / std::abs(b));
            worst = std::max(worst, err);
            if (err > 1e-6) failure = "linear trial " + std::to_string(trial);
        }
    }

    // 1/sqrt(N) scaling of the width error at fixed 3% noise.
    const int counts[] = {50, 200, 800};
    std::vector<double> log_n, log_rms;
    for (int n_i : counts) {
        double sq = 0.0;
        const int seeds = 48;
        for (int s = 0; s < seeds; ++s) {
            std::vector<double> xs(n_i), ys(n_i);
            const double w = 0.1;
            for (int i = 0; i < n_i; ++i) {
                xs[i] = double(i) / double(n_i - 1);
                const double clean = fit::lorentzian_model(xs[i], 0.5, w, 1.0, 0.3);
                ys[i] = clean + 0.03 * (2.0 / (M_PI * w)) * rng.gaussian();
            }
            const fit::LorentzianFit f = fit::fit_lorentzian(xs, ys);
            const double rel = (f.fwhm - w) / w;
            sq += rel * rel;
        }
        log_n.push_back(std::log(double(n_i)));
        log_rms.push_back(0.5 * std::log(sq / 48.0));
    }
    const fit::LinearFit scaling = fit::fit_linear(log_n, log_rms);

    CriterionResult r{12, "fit recovery and error scaling"};
    r.expected = "noiseless recovery < 1e-6 relative; error ~ N^-0.5";
    r.got = "worst recovery error " + fmt(worst) + "; scaling exponent " + fmt(scaling.slope);
    r.tolerance = "1e-6; exponent in [-0.65, -0.35]";
    r.pass = failure.empty() && scaling.slope > -0.65 && scaling.slope < -0.35;
    if (!failure.empty()) r.note = "first failure: " + failure;
    stamp_runtime(r, timer, 30.0);
    return r;
}

// 13. Byte-determinism of scenario outputs.
CriterionResult c13_determinism(const DeviceConfig& cfg, const std::string& scratch_dir) {
    Timer timer;
    namespace fs = std::filesystem;
    Scenario sc;
    sc.name = "noise-psd";
    sc.seed = 99;
    const std::string dir_a = (fs::path(scratch_dir) / "det_a").string();
    const std::string dir_b = (fs::path(scratch_dir) / "det_b").string();
    const RunManifest ma = run(sc, cfg, dir_a);
    const RunManifest mb = run(sc, cfg, dir_b);

    bool same = ma.outputs.size() == mb.outputs.size();
    std::string diff;
    for (std::size_t i = 0; same && i < ma.outputs.size(); ++i) {
        if (ma.outputs[i] != mb.outputs[i]) {
            same = false;
            diff = ma.outputs[i].first;
        }
    }
    CriterionResult r{13, "output determinism under fixed config and seed"};
    r.expected = "byte-identical outputs across two runs";
    r.got = same ? "all " + std::to_string(ma.outputs.size()) + " output hashes identical"
                 : "mismatch in " + diff;
    r.tolerance = "exact";
    r.pass = same;
    stamp_runtime(r, timer, 60.0);
    return r;
}

}  // namespace

std::string CriterionResult::line() const {
    std::ostringstream s;
    s << (pass ? "PASS" : "FAIL") << "  " << id << "  " << name << "  [expected: " << expected
      << " | got: " << got << " | tolerance: " << tolerance << "]";
    if (!note.empty()) s << " -- " << note;
    return s.str();
}

std::vector<CriterionResult> run_acceptance(const DeviceConfig& cfg,
                                            const std::string& scratch_dir) {
    std::vector<CriterionResult> out;
    out.push_back(c1_parametric_coupling(cfg));
    out.push_back(c2_cooperativity(cfg));
    out.push_back(c3_peak_factor());
    out.push_back(c4_closed_form());
    out.push_back(c5_lindblad_agreement(cfg));
    out.push_back(c6_thermal(cfg));
    out.push_back(c7_psd_pipeline(cfg));
    out.push_back(c8_ridge(cfg));
    out.push_back(c9_eta(cfg));
    out.push_back(c10_transmon(cfg));
    out.push_back(c11_geometry(cfg));
    out.push_back(c12_fitting());
    out.push_back(c13_determinism(cfg, scratch_dir));
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace sawmw
