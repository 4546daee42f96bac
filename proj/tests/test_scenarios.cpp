#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "sawmw/cmt.hpp"
#include "sawmw/fit.hpp"
#include "sawmw/scenarios.hpp"

using namespace sawmw;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "sawmw_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

bool has_output(const RunManifest& m, const std::string& file) {
    for (const auto& [name, hash] : m.outputs)
        if (name == file) return true;
    return false;
}

}  // namespace

TEST_CASE("unknown scenario is rejected") {
    Scenario sc;
    sc.name = "not-a-scenario";
    CHECK_THROWS_AS(run(sc, DeviceConfig::reference(), fresh_dir("bogus").string()),
                    std::invalid_argument);
}

TEST_CASE("resonator-spectra scenario recovers the configured linewidths") {
    Scenario sc;
    sc.name = "resonator-spectra";
    sc.seed = 11;
    const RunManifest m = run(sc, DeviceConfig::reference(), fresh_dir("spectra").string());
    CHECK(m.passed);
    CHECK(has_output(m, "figS2a_mw_reflection.csv"));
    CHECK(has_output(m, "figS2b_saw_transmission.csv"));
    CHECK(has_output(m, "summary.txt"));
}

TEST_CASE("stark-calibration scenario") {
    Scenario sc;
    sc.name = "stark-calibration";
    sc.seed = 12;
    const RunManifest m = run(sc, DeviceConfig::reference(), fresh_dir("stark").string());
    CHECK(m.passed);
    CHECK(has_output(m, "fig2a_mw_stark.csv"));
    CHECK(has_output(m, "fig2b_saw_stark.csv"));
}

TEST_CASE("efficiency-map scenario emits one panel per detuning") {
    Scenario sc;
    sc.name = "efficiency-map";
    sc.seed = 13;
    sc.params["grid"] = "15";
    sc.params["detunings_mhz"] = "0,60";
    const RunManifest m = run(sc, DeviceConfig::reference(), fresh_dir("effmap").string());
    CHECK(m.passed);
    CHECK(has_output(m, "fig3b_detuning0MHz.csv"));
    CHECK(has_output(m, "fig3b_detuning60MHz.csv"));
}

TEST_CASE("flux-line scenario checks its own slope") {
    Scenario sc;
    sc.name = "flux-line";
    sc.seed = 14;
    const RunManifest m = run(sc, DeviceConfig::reference(), fresh_dir("flux").string());
    CHECK(m.passed);
    CHECK(has_output(m, "fig3c.csv"));
}

TEST_CASE("noise-psd scenario recovers occupations at both temperatures") {
    Scenario sc;
    sc.name = "noise-psd";
    sc.seed = 15;
    const fs::path dir = fresh_dir("noisepsd");
    const RunManifest m = run(sc, DeviceConfig::reference(), dir.string());
    CHECK(m.passed);
    CHECK(has_output(m, "fig4_teff37mK.csv"));
    CHECK(has_output(m, "fig4_teff85mK.csv"));
    CHECK(has_output(m, "fig4_teff37mK.json"));

    // The summary carries the occupation checks; spot-check the wording.
    std::ifstream f(dir / "summary.txt");
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(text.find("occupation <n_s> at T_eff 37 mK") != std::string::npos);
    CHECK(text.find("result: pass") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    Scenario sc;
    sc.name = "noise-psd";
    sc.seed = 99;
    const RunManifest a = run(sc, DeviceConfig::reference(), fresh_dir("det_a").string());
    const RunManifest b = run(sc, DeviceConfig::reference(), fresh_dir("det_b").string());
    REQUIRE(a.outputs.size() == b.outputs.size());
    for (std::size_t i = 0; i < a.outputs.size(); ++i) {
        CHECK(a.outputs[i].first == b.outputs[i].first);
        CHECK(a.outputs[i].second == b.outputs[i].second);
    }

    // A different seed must perturb the noisy CSVs.
    Scenario sc2 = sc;
    sc2.seed = 100;
    const RunManifest c = run(sc2, DeviceConfig::reference(), fresh_dir("det_c").string());
    bool any_differs = false;
    for (std::size_t i = 0; i < a.outputs.size(); ++i)
        if (a.outputs[i].first.ends_with(".csv") && c.outputs[i].second != a.outputs[i].second)
            any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("parametric spectroscopy trace") {
    const DeviceConfig cfg = DeviceConfig::reference();

    SUBCASE("zero drive amplitude leaves a flat trace") {
        const CsvTable t = parametric_spectroscopy(cfg, Subsystem::saw, 0.0, 40e6, 21);
        for (const auto& row : t.rows) {
            CHECK(row[1] == 0.0);
            CHECK(row[2] == 0.0);
        }
    }

    SUBCASE("resonance center follows the drive-induced shift") {
        const double amp = 150e6;
        const CsvTable t = parametric_spectroscopy(cfg, Subsystem::saw, amp, 40e6, 101);
        std::vector<double> x, y;
        for (const auto& row : t.rows) {
            x.push_back(row[0]);
            y.push_back(row[2]);  // f population is the cleanest line shape
        }
        const fit::LorentzianFit lf = fit::fit_lorentzian(x, y);
        const double f0 = cfg.device.transmon.omega_f_hz - cfg.device.saw.omega_hz;
        const double stark = *cfg.cal.stark_s2_per_hz * amp * amp;
        CHECK(lf.center == doctest::Approx(f0 + stark).epsilon(1e-4));
    }

    SUBCASE("line width grows with drive amplitude") {
        double prev = 0.0;
        for (double amp : {100e6, 200e6, 400e6}) {
            const CsvTable t = parametric_spectroscopy(cfg, Subsystem::saw, amp, 80e6, 101);
            std::vector<double> x, y;
            for (const auto& row : t.rows) {
                x.push_back(row[0]);
                y.push_back(row[2]);
            }
            const fit::LorentzianFit lf = fit::fit_lorentzian(x, y);
            CHECK(lf.fwhm > prev);
            prev = lf.fwhm;
        }
    }

    SUBCASE("qubit subsystem is not a valid sweep target") {
        CHECK_THROWS_AS(parametric_spectroscopy(cfg, Subsystem::qubit, 1e6, 1e6, 11),
                        std::invalid_argument);
    }
}

TEST_CASE("parametric-spectroscopy scenario writes both panels") {
    Scenario sc;
    sc.name = "parametric-spectroscopy";
    sc.seed = 16;
    sc.params["points"] = "81";
    const RunManifest m = run(sc, DeviceConfig::reference(), fresh_dir("paramspec").string());
    CHECK(m.passed);
    CHECK(has_output(m, "figS3a_mw_parametric.csv"));
    CHECK(has_output(m, "figS3b_saw_parametric.csv"));
}

TEST_CASE("manifest carries config hash, versions and file hashes") {
    Scenario sc;
    sc.name = "stark-calibration";
    sc.seed = 17;
    const fs::path dir = fresh_dir("manifest");
    const RunManifest m = run(sc, DeviceConfig::reference(), dir.string());
    CHECK(m.config_hash != 0);
    CHECK(m.seed == 17);
    CHECK(m.module_versions.count("sawmw") == 1);
    CHECK(fs::exists(dir / "manifest.json"));
    for (const auto& [name, hash] : m.outputs) {
        CHECK(fs::exists(dir / name));
        CHECK(hash == hash_file((dir / name).string()));
    }
}

TEST_CASE("doubling kappa_f in the config shifts the cooperativity off its target") {
    // Sensitivity of the release gate to a miscalibrated config: the
    // operating-point cooperativity moves by 2x.
    DeviceConfig cfg = DeviceConfig::reference();
    const double g2 = parametric_coupling(
        cfg.device.coupling.g_saw_hz, cfg.device.transmon.alpha_hz(),
        cfg.device.transmon.omega_e_hz, cfg.device.saw.omega_hz,
        cfg.cal.drive2_hz_per_sqrt_mw);
    const double c_ok = cooperativity(std::abs(g2), cfg.device.saw.linewidth_total_hz,
                                      cfg.device.transmon.kappa_f_hz);
    const double c_bad = cooperativity(std::abs(g2), cfg.device.saw.linewidth_total_hz,
                                       2.0 * cfg.device.transmon.kappa_f_hz);
    CHECK(std::abs(c_ok - 0.82) / 0.82 < 0.01);
    CHECK(std::abs(c_bad - 0.82) / 0.82 > 0.01);
}
