#include "sawmw/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sawmw/acceptance.hpp"
#include "sawmw/cmt.hpp"
#include "sawmw/fit.hpp"
#include "sawmw/liouvillian.hpp"
#include "sawmw/noise.hpp"
#include "sawmw/rng.hpp"
#include "sawmw/solvers.hpp"
#include "sawmw/units.hpp"

namespace sawmw {

const char* const kLibraryVersion = "0.1.0";

const std::vector<std::string>& Scenario::known_names() {
    static const std::vector<std::string> names = {
        "resonator-spectra", "stark-calibration", "efficiency-map", "flux-line",
        "noise-psd",         "parametric-spectroscopy",             "self-check"};
    return names;
}

double Scenario::number(const std::string& key, double fallback) const {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stod(it->second);
}

int Scenario::integer(const std::string& key, int fallback) const {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stoi(it->second);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["module_versions"] = module_versions;
    j["wall_time_s"] = wall_time_s;
    j["passed"] = passed;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [path, hash] : outputs)
        files.push_back({{"file", path}, {"fnv1a64", hash}});
    j["outputs"] = files;
    return j.dump(2);
}

namespace {

namespace fs = std::filesystem;

struct ScenarioContext {
    const DeviceConfig& cfg;
    const Scenario& scenario;
    std::string dir;
    GaussianStream rng;
    RunManifest manifest;
    std::vector<std::string> summary;

    ScenarioContext(const DeviceConfig& c, const Scenario& s, const std::string& d)
        : cfg(c), scenario(s), dir(d), rng(s.seed) {}

    std::string emit_csv(const std::string& name, const CsvTable& table) {
        const std::string path = (fs::path(dir) / name).string();
        write_csv(path, table);
        manifest.outputs.emplace_back(name, hash_file(path));
        return path;
    }

    void emit_text(const std::string& name, const std::string& text) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << text;
        f.close();
        manifest.outputs.emplace_back(name, hash_file(path));
    }

    void note(const std::string& line) { summary.push_back(line); }

    void check(const std::string& label, double expected, double got, double rel_tol) {
        const double err = std::abs(got - expected) /
                           std::max(std::abs(expected), 1e-300);
        const bool ok = err <= rel_tol;
        if (!ok) manifest.passed = false;
        std::ostringstream line;
        line.precision(6);
        line << (ok ? "[ok]   " : "[FAIL] ") << label << ": expected " << expected
             << ", got " << got << " (tol " << rel_tol * 100 << "%)";
        summary.push_back(line.str());
    }
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    const double la = std::log10(lo), lb = std::log10(hi);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, la + (lb - la) * double(i) / double(n - 1));
    return v;
}

std::vector<double> parse_list(const Scenario& s, const std::string& key,
                               const std::string& fallback) {
    std::string text = fallback;
    const auto it = s.params.find(key);
    if (it != s.params.end()) text = it->second;
    std::vector<double> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

/// Conversion network at the optimized drive point (1 mW into each tone, both
/// parametric resonances met).
LinearModeNetwork operating_network(const DeviceConfig& cfg) {
    return conversion_network(cfg.device, cfg.cal.drive1_hz_per_sqrt_mw,
                              cfg.cal.drive2_hz_per_sqrt_mw);
}

// ---- scenarios ----

void run_resonator_spectra(ScenarioContext& ctx) {
    const DeviceParams& dev = ctx.cfg.device;
    const double noise_frac = ctx.scenario.number("noise_frac", 0.02);

    // MW reflection around resonance.
    {
        const double gamma = dev.mw.linewidth_total_hz;
        const int n = ctx.scenario.integer("points", 401);
        LinearModeNetwork bare;
        bare.total_rate_hz = {gamma, 1.0, 1.0};
        bare.external_rate_hz = {dev.mw.linewidth_external_hz, 0.0, 0.0};
        CsvTable t;
        t.columns = {"freq_hz", "s11_mag_sq"};
        std::vector<double> f, y;
        for (double off : linspace(-6 * gamma, 6 * gamma, n)) {
            const double mag = std::norm(s_matrix(bare, off)(0, 0));
            const double noisy = mag + noise_frac * ctx.rng.gaussian();
            t.rows.push_back({dev.mw.omega_hz + off, noisy});
            f.push_back(dev.mw.omega_hz + off);
            y.push_back(noisy);
        }
        ctx.emit_csv("figS2a_mw_reflection.csv", t);

        const fit::ReflectionFit rf = fit::reflection_linewidths(f, y);
        ctx.emit_text("figS2a_fit.json", rf.to_json());
        ctx.check("MW total linewidth (Hz)", gamma, rf.total_hz, 0.05);
        ctx.check("MW external coupling (Hz)", dev.mw.linewidth_external_hz, rf.external_hz, 0.05);
        ctx.check("MW external coupling factor", dev.mw.eta(), rf.external_hz / rf.total_hz, 0.05);
    }

    // SAW transmission between the two IDT ports: Fano line from the direct
    // IDT-IDT path interfering with the resonator.
    {
        const double width = dev.saw.linewidth_total_hz;
        const double eta_s = dev.saw.eta();
        const double peak = 4.0 * eta_s * eta_s;  // on-resonance |S21|^2 scale
        const double q = ctx.scenario.number("fano_q", 1.5);
        const int n = ctx.scenario.integer("points", 401);
        CsvTable t;
        t.columns = {"freq_hz", "transmission"};
        std::vector<double> f, y;
        for (double off : linspace(-6 * width, 6 * width, n)) {
            const double model =
                fit::fano_model(off, 0.0, width, peak / (q * q), 0.1 * peak, q);
            const double noisy = model + noise_frac * peak * ctx.rng.gaussian();
            t.rows.push_back({dev.saw.omega_hz + off, noisy});
            f.push_back(off);
            y.push_back(noisy);
        }
        ctx.emit_csv("figS2b_saw_transmission.csv", t);

        const fit::FanoFit ff = fit::fit_fano(f, y);
        ctx.emit_text("figS2b_fit.json", ff.to_json());
        ctx.check("SAW linewidth (Hz)", width, ff.fwhm, 0.05);
        ctx.check("Fano asymmetry q", q, ff.q, 0.15);
        ctx.note("SAW external coupling factor (config): " + format_full(eta_s));
    }
}

void run_stark_calibration(ScenarioContext& ctx) {
    const DeviceParams& dev = ctx.cfg.device;
    const double noise_frac = ctx.scenario.number("noise_frac", 0.03);
    const double quanta_per_mw = ctx.scenario.number("quanta_per_mw", 2.0);
    const int n = ctx.scenario.integer("points", 25);

    struct Panel {
        const char* file;
        const char* label;
        double omega_res;
        double g;
    };
    const Panel panels[] = {
        {"fig2a_mw_stark.csv", "MW", dev.mw.omega_hz, dev.coupling.g_mw_hz},
        {"fig2b_saw_stark.csv", "SAW", dev.saw.omega_hz, dev.coupling.g_saw_hz},
    };
    for (const Panel& p : panels) {
        const double chi = dispersive_shift(p.g, dev.transmon.omega_e_hz, p.omega_res);
        const double chi_q =
            stark_per_quantum(chi, dev.transmon.alpha_hz(), p.omega_res,
                              dev.transmon.omega_e_hz);
        CsvTable t;
        t.columns = {"power_mw", "qubit_shift_hz", "quanta"};
        std::vector<double> x, y;
        const double max_shift = std::abs(chi_q) * quanta_per_mw * 2.0;
        for (double power : linspace(0.0, 2.0, n)) {
            const double quanta = quanta_per_mw * power;
            const double shift =
                chi_q * quanta + noise_frac * max_shift * ctx.rng.gaussian();
            t.rows.push_back({power, shift, quanta});
            x.push_back(power);
            y.push_back(shift);
        }
        ctx.emit_csv(p.file, t);

        const fit::LinearFit lf = fit::fit_linear(x, y);
        ctx.check(std::string(p.label) + " Stark slope (Hz/mW)", chi_q * quanta_per_mw,
                  lf.slope, 0.10);
        ctx.note(std::string(p.label) + " Stark shift per quantum (Hz): " + format_full(chi_q) +
                 "; fitted quanta per mW: " + format_full(lf.slope / chi_q));
    }
}

void run_efficiency_map(ScenarioContext& ctx) {
    const std::vector<double> detunings = parse_list(ctx.scenario, "detunings_mhz",
                                                     "0,20,40,60,80");
    const int n = ctx.scenario.integer("grid", 41);
    const double lo_dbm = ctx.scenario.number("min_dbm", -20.0);
    const double hi_dbm = ctx.scenario.number("max_dbm", 6.0);

    std::vector<double> powers_mw;
    for (double dbm : linspace(lo_dbm, hi_dbm, n)) powers_mw.push_back(dbm_to_mw(dbm));

    for (double det_mhz : detunings) {
        const EfficiencyMap map = sweep_drive_powers(ctx.cfg.device, ctx.cfg.cal,
                                                     det_mhz * 1e6, powers_mw, powers_mw);
        CsvTable t;
        t.columns = {"p1_dbm", "p2_dbm", "eta_tilde"};
        for (std::size_t i = 0; i < map.axis1_mw.size(); ++i)
            for (std::size_t j = 0; j < map.axis2_mw.size(); ++j)
                t.rows.push_back({linear_to_db(map.axis1_mw[i]), linear_to_db(map.axis2_mw[j]),
                                  map.at(i, j)});
        std::ostringstream name;
        name << "fig3b_detuning" << int(det_mhz) << "MHz.csv";
        ctx.emit_csv(name.str(), t);

        const auto [i, j] = map.argmax();
        std::ostringstream line;
        line.precision(6);
        line << "detuning " << det_mhz << " MHz: max eta_tilde " << map.at(i, j) << " at ("
             << linear_to_db(map.axis1_mw[i]) << " dBm, " << linear_to_db(map.axis2_mw[j])
             << " dBm)";
        ctx.note(line.str());
    }
}

void run_flux_line(ScenarioContext& ctx) {
    const DeviceParams& dev = ctx.cfg.device;
    LinearModeNetwork net = operating_network(ctx.cfg);
    FluxLineOptions opt;
    opt.pull_hz_per_phonon = ctx.scenario.number("pull_hz_per_phonon",
                                                 ctx.cfg.cal.saw_pull_hz_per_phonon);

    const std::vector<double> flux = logspace(ctx.scenario.number("flux_min", 1e6),
                                              ctx.scenario.number("flux_max", 1e12),
                                              ctx.scenario.integer("points", 37));
    const std::vector<double> out = flux_transfer_line(dev, net, flux, opt);

    const double bound = dev.mw.eta() * dev.saw.eta();
    CsvTable t;
    t.columns = {"input_flux_quanta_s", "output_flux_quanta_s", "bound_eta_tilde_1",
                 "bound_caption_4x"};
    for (std::size_t i = 0; i < flux.size(); ++i)
        t.rows.push_back({flux[i], out[i], bound * flux[i], 4.0 * bound * flux[i]});
    ctx.emit_csv("fig3c.csv", t);

    // Low-flux slope against the on-resonance closed form.
    std::vector<double> x(flux.begin(), flux.begin() + 12);
    std::vector<double> y(out.begin(), out.begin() + 12);
    const fit::LinearFit lf = fit::fit_linear(x, y);
    const double c_m = cooperativity(net.g_pm_hz, dev.mw.linewidth_total_hz,
                                     dev.transmon.kappa_f_hz);
    const double c_s = cooperativity(net.g_ps_hz, dev.saw.linewidth_total_hz,
                                     dev.transmon.kappa_f_hz);
    const double eta = efficiency_on_resonance(c_m, c_s, dev.mw.eta(), dev.saw.eta());
    ctx.check("low-flux transfer slope", eta, lf.slope, 0.02);
    ctx.note("normalized efficiency eta_tilde at the operating point: " +
             format_full(eta / bound));
    ctx.note("bound line (eta_tilde = 1) corresponds to P_m = eta_m eta_s P_s; the 4x "
             "normalization is emitted alongside for comparison");
}

void run_noise_psd(ScenarioContext& ctx) {
    const DeviceParams& dev = ctx.cfg.device;
    const LinearModeNetwork net = operating_network(ctx.cfg);
    const double noise_frac = ctx.scenario.number("noise_frac", 0.05);
    const std::vector<double> teff_mk = parse_list(ctx.scenario, "teff_mk", "37,85");

    for (double t_mk : teff_mk) {
        const ThermalBath bath{t_mk * 1e-3, dev.saw.omega_hz};
        const double kappa_f = dev.transmon.kappa_f_hz;
        const double c_m = cooperativity(net.g_pm_hz, dev.mw.linewidth_total_hz, kappa_f);
        const double c_s = cooperativity(net.g_ps_hz, dev.saw.linewidth_total_hz, kappa_f);
        const double width_eff =
            dev.saw.linewidth_total_hz * (1.0 + c_s / (1.0 + c_m));
        const double span = ctx.scenario.number("span_hz", 6.0 * width_eff);
        const int n = ctx.scenario.integer("points", 641);

        const NoisePSD model = upconverted_psd(dev, net, bath, linspace(-span, span, n),
                                               ctx.cfg.noise.background);
        const double peak_height = model.meta.conversion_peak * model.meta.bath_occupation;

        CsvTable t;
        t.columns = {"offset_hz", "psd", "background"};
        std::vector<double> x, y;
        for (std::size_t i = 0; i < model.offsets_hz.size(); ++i) {
            const double noisy =
                model.values[i] + noise_frac * peak_height * ctx.rng.gaussian();
            t.rows.push_back({model.offsets_hz[i], noisy, model.background});
            x.push_back(model.offsets_hz[i]);
            y.push_back(noisy);
        }
        std::ostringstream base;
        base << "fig4_teff" << int(t_mk) << "mK";
        ctx.emit_csv(base.str() + ".csv", t);

        nlohmann::json sidecar;
        sidecar["chain"] = {{"jpa_gain_db", ctx.cfg.noise.jpa_gain_db},
                            {"twpa_gain_db", ctx.cfg.noise.twpa_gain_db}};
        sidecar["bath"] = {{"temperature_k", bath.temperature_k},
                           {"mode_frequency_hz", bath.mode_frequency_hz},
                           {"occupation", model.meta.bath_occupation}};
        sidecar["conversion_area"] = model.meta.conversion_area;
        sidecar["conversion_peak"] = model.meta.conversion_peak;
        sidecar["background"] = model.background;
        ctx.emit_text(base.str() + ".json", sidecar.dump(2));

        const fit::LorentzianFit lf = fit::fit_lorentzian(x, y);
        const double n_fit = lf.area / model.meta.conversion_area;
        ctx.check("occupation <n_s> at T_eff " + std::to_string(int(t_mk)) + " mK",
                  model.meta.bath_occupation, n_fit, 0.05);
        ctx.note("  fitted effective temperature (mK): " +
                 format_full(1e3 * effective_temperature(n_fit, dev.saw.omega_hz)));
        ctx.note("  fitted peak width (Hz): " + format_full(lf.fwhm) + "; bare SAW linewidth: " +
                 format_full(dev.saw.linewidth_total_hz) + " (ratio " +
                 format_full(lf.fwhm / dev.saw.linewidth_total_hz) + ")");
    }

    const double sens = displacement_sensitivity(
        dev.geometry.x_zpf_m, ctx.cfg.noise.background,
        upconverted_psd(dev, net, ThermalBath{0.037, dev.saw.omega_hz}, {0.0},
                        ctx.cfg.noise.background)
            .meta.conversion_peak);
    ctx.check("displacement sensitivity (m/rtHz)", 0.2e-18, sens, 0.10);
}

void run_parametric_spectroscopy_scenario(ScenarioContext& ctx) {
    const double amp = ctx.scenario.number("amplitude_mhz", 150.0) * 1e6;
    const int points = ctx.scenario.integer("points", 161);

    {
        const CsvTable t = parametric_spectroscopy(ctx.cfg, Subsystem::mw, amp,
                                                   ctx.scenario.number("span_mhz", 60.0) * 1e6,
                                                   points);
        ctx.emit_csv("figS3a_mw_parametric.csv", t);
    }
    const CsvTable t = parametric_spectroscopy(ctx.cfg, Subsystem::saw, amp,
                                               ctx.scenario.number("span_mhz", 60.0) * 1e6,
                                               points);
    ctx.emit_csv("figS3b_saw_parametric.csv", t);

    // Report the fitted resonance against the Stark-shifted transition.
    std::vector<double> x, y;
    for (const auto& row : t.rows) {
        x.push_back(row[0]);
        y.push_back(row[1]);
    }
    const fit::LorentzianFit lf = fit::fit_lorentzian(x, y);
    const DeviceParams& dev = ctx.cfg.device;
    const double f0 = dev.transmon.omega_f_hz - dev.saw.omega_hz;
    const DriveTone d2{f0, amp, "2"};
    const double stark = stark_shift_of_f(DriveTone{0.0, 0.0, "2"}, d2, dev,
                                          ctx.cfg.cal.stark_s1_per_hz,
                                          ctx.cfg.cal.stark_s2_per_hz);
    ctx.check("SAW parametric resonance center (Hz)", f0 + stark, lf.center,
              5e3 / std::abs(f0 + stark));
    ctx.note("drive-induced shift of the resonance (Hz): " + format_full(stark));
}

void run_self_check(ScenarioContext& ctx) {
    const std::string scratch = (fs::path(ctx.dir) / "scratch").string();
    fs::create_directories(scratch);
    const std::vector<CriterionResult> results = run_acceptance(ctx.cfg, scratch);
    for (const auto& r : results) {
        ctx.note(r.line());
        if (!r.pass) ctx.manifest.passed = false;
    }
}

}  // namespace

CsvTable parametric_spectroscopy(const DeviceConfig& cfg, Subsystem which,
                                 double drive_amplitude_hz, double span_hz, int points) {
    if (which == Subsystem::qubit)
        throw std::invalid_argument("parametric_spectroscopy: pick a resonator subsystem");
    const DeviceParams& dev = cfg.device;
    dev.validate();

    const bool is_saw = (which == Subsystem::saw);
    const ResonatorParams& res = is_saw ? dev.saw : dev.mw;
    const double g = is_saw ? dev.coupling.g_saw_hz : dev.coupling.g_mw_hz;
    const double f0 = is_saw ? dev.transmon.omega_f_hz - res.omega_hz
                             : res.omega_hz - dev.transmon.omega_f_hz;
    if (span_hz <= 0 || points < 3)
        throw std::invalid_argument("parametric_spectroscopy: bad sweep window");

    // Qubit (x) resonator pair in the drive frame. The reflection change is
    // read out dispersively: the f population pulls the MW resonator between
    // its qubit-in-g and qubit-in-f frequencies.
    const int n_mode = 4;
    const int n_q = 3;
    const CMatrix b = kron(annihilator(n_mode), CMatrix::Identity(n_q, n_q));
    auto sig = [&](int k, int l) {
        return kron(CMatrix::Identity(n_mode, n_mode), transmon_projector(k, l, n_q));
    };
    const CMatrix sig_gf = sig(0, 2);
    const CMatrix sig_ff = sig(2, 2);

    const double g_p = std::abs(parametric_coupling(
        g, dev.transmon.alpha_hz(), dev.transmon.omega_e_hz, res.omega_hz,
        drive_amplitude_hz));

    // Weak tone populating the resonator mode (thermal phonons also enter for
    // the SAW case).
    const double n_bar = is_saw ? bose_einstein(res.omega_hz, 0.037) : 0.0;
    const double eps_hz = 0.25 * res.linewidth_total_hz;

    std::vector<Collapse> collapses;
    collapses.push_back({b, angular(res.linewidth_total_hz) * (n_bar + 1.0)});
    if (n_bar > 0) collapses.push_back({b.adjoint(), angular(res.linewidth_total_hz) * n_bar});
    collapses.push_back({sig_gf, angular(dev.transmon.kappa_f_hz)});

    // Dispersive pulls of the MW resonator for qubit in g and in f.
    const double w_fe = dev.transmon.omega_f_hz - dev.transmon.omega_e_hz;
    const double pull_g = dev.coupling.g_mw_hz * dev.coupling.g_mw_hz /
                          (dev.mw.omega_hz - dev.transmon.omega_e_hz);
    const double pull_f =
        2.0 * dev.coupling.g_mw_hz * dev.coupling.g_mw_hz / (dev.mw.omega_hz - w_fe);
    const double pull_diff = pull_f - pull_g;

    const DriveTone tone_template{f0, drive_amplitude_hz, "2"};
    const double stark = stark_shift_of_f(
        is_saw ? DriveTone{0.0, 0.0, "2"} : tone_template,
        is_saw ? tone_template : DriveTone{0.0, 0.0, "2"}, dev,
        cfg.cal.stark_s1_per_hz, cfg.cal.stark_s2_per_hz);

    // Resonance sits at f0 + stark for the SAW tone (omega_f - omega_s grows
    // with the shift) and at f0 - stark for the MW tone (omega_m - omega_f
    // shrinks).
    const double center = is_saw ? f0 + stark : f0 - stark;

    CsvTable t;
    t.columns = {"drive_freq_hz", "delta_s11_sq", "f_population"};
    for (double f_d : linspace(center - span_hz, center + span_hz, points)) {
        double p_f = 0.0;
        if (drive_amplitude_hz > 0.0) {
            const double detuning = is_saw
                                        ? dev.transmon.omega_f_hz + stark - res.omega_hz - f_d
                                        : dev.transmon.omega_f_hz + stark + f_d - dev.mw.omega_hz;
            CMatrix h = angular(detuning) * sig_ff;
            h += angular(g_p) * (b * sig_gf.adjoint() + b.adjoint() * sig_gf);
            h += angular(eps_hz) * (b + b.adjoint());
            const DensityState ss = steady_state(lindblad(h, collapses));
            p_f = ss.expectation(sig_ff).real();
        }
        const Complex pulled = fit::reflection_model(
            0.0, pull_diff * p_f, dev.mw.linewidth_total_hz, dev.mw.linewidth_external_hz);
        const Complex bare = fit::reflection_model(
            0.0, 0.0, dev.mw.linewidth_total_hz, dev.mw.linewidth_external_hz);
        t.rows.push_back({f_d, std::norm(pulled - bare), p_f});
    }
    return t;
}

RunManifest run(const Scenario& scenario, const DeviceConfig& cfg, const std::string& out_dir) {
    if (std::find(Scenario::known_names().begin(), Scenario::known_names().end(),
                  scenario.name) == Scenario::known_names().end())
        throw std::invalid_argument("unknown scenario: " + scenario.name);
    cfg.device.validate();
    fs::create_directories(out_dir);

    ScenarioContext ctx(cfg, scenario, out_dir);
    ctx.manifest.config_hash = hash_bytes(serialize_config(cfg));
    ctx.manifest.seed = scenario.seed;
    ctx.manifest.module_versions = {{"sawmw", kLibraryVersion}};

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (scenario.name == "resonator-spectra") run_resonator_spectra(ctx);
        else if (scenario.name == "stark-calibration") run_stark_calibration(ctx);
        else if (scenario.name == "efficiency-map") run_efficiency_map(ctx);
        else if (scenario.name == "flux-line") run_flux_line(ctx);
        else if (scenario.name == "noise-psd") run_noise_psd(ctx);
        else if (scenario.name == "parametric-spectroscopy") run_parametric_spectroscopy_scenario(ctx);
        else if (scenario.name == "self-check") run_self_check(ctx);
    } catch (const std::exception& e) {
        throw std::runtime_error("scenario '" + scenario.name + "': " + e.what());
    }
    const auto t1 = std::chrono::steady_clock::now();
    ctx.manifest.wall_time_s = std::chrono::duration<double>(t1 - t0).count();

    std::ostringstream summary;
    summary << "scenario: " << scenario.name << "\nseed: " << scenario.seed << "\n\n";
    for (const auto& line : ctx.summary) summary << line << "\n";
    summary << "\nresult: " << (ctx.manifest.passed ? "pass" : "FAIL") << "\n";
    ctx.emit_text("summary.txt", summary.str());

    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    if (!mf) throw std::runtime_error("cannot write manifest.json");
    mf << ctx.manifest.to_json() << "\n";
    return ctx.manifest;
}

}  // namespace sawmw
