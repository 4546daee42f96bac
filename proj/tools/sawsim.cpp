// sawsim: scenario runner, self-check and curve-fitting front end for the
// SAW-qubit-MW transducer toolkit.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sawmw/acceptance.hpp"
#include "sawmw/csvio.hpp"
#include "sawmw/device.hpp"
#include "sawmw/fit.hpp"
#include "sawmw/scenarios.hpp"

namespace {

sawmw::DeviceConfig load_or_default(const std::string& path) {
    if (path.empty()) return sawmw::DeviceConfig::reference();
    return sawmw::load_config(path);
}

int cmd_run(const std::string& name, const std::string& config_path, const std::string& out_dir,
            std::uint64_t seed, const std::vector<std::string>& params) {
    sawmw::Scenario scenario;
    scenario.name = name;
    scenario.seed = seed;
    for (const std::string& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "bad --param (expected key=value): " << kv << "\n";
            return 2;
        }
        scenario.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }

    const sawmw::DeviceConfig cfg = load_or_default(config_path);
    for (const std::string& w : cfg.device.warnings()) std::cerr << "warning: " << w << "\n";

    const sawmw::RunManifest manifest = sawmw::run(scenario, cfg, out_dir);
    std::cout << "wrote " << manifest.outputs.size() << " files to " << out_dir << " in "
              << manifest.wall_time_s << " s\n";
    for (const auto& [file, hash] : manifest.outputs) std::cout << "  " << file << "\n";
    std::cout << (manifest.passed ? "result: pass\n" : "result: FAIL (see summary.txt)\n");
    return manifest.passed ? 0 : 1;
}

int cmd_self_check(const std::string& config_path, const std::string& out_dir) {
    const sawmw::DeviceConfig cfg = load_or_default(config_path);
    std::filesystem::create_directories(out_dir);
    const auto results = sawmw::run_acceptance(cfg, out_dir);
    for (const auto& r : results) std::cout << r.line() << "\n";
    const bool ok = sawmw::all_passed(results);
    std::cout << (ok ? "self-check: all criteria passed\n" : "self-check: FAILURES present\n");
    return ok ? 0 : 1;
}

int cmd_fit(const std::string& model, const std::string& csv_path) {
    const sawmw::CsvTable table = sawmw::read_csv(csv_path);
    if (table.columns.size() < 2) {
        std::cerr << "fit: need at least two columns\n";
        return 2;
    }
    std::vector<double> x, y;
    for (const auto& row : table.rows) {
        x.push_back(row[0]);
        y.push_back(row[1]);
    }

    std::vector<std::string> warnings;
    std::string json;
    if (model == "lorentzian") {
        json = sawmw::fit::fit_lorentzian(x, y, std::nullopt, &warnings).to_json();
    } else if (model == "fano") {
        json = sawmw::fit::fit_fano(x, y, std::nullopt, &warnings).to_json();
    } else if (model == "linear") {
        json = sawmw::fit::fit_linear(x, y).to_json();
    } else if (model == "reflection") {
        json = sawmw::fit::reflection_linewidths(x, y).to_json();
    } else {
        std::cerr << "fit: unknown model '" << model
                  << "' (lorentzian | fano | linear | reflection)\n";
        return 2;
    }
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << json << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAW-qubit-MW transducer simulation and calibration toolkit"};
    app.require_subcommand(1);

    std::string scenario_name, config_path, out_dir = "out", fit_model, fit_csv;
    std::uint64_t seed = 1;
    std::vector<std::string> params;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and emit CSV/JSON outputs");
    run_cmd->add_option("scenario", scenario_name, "one of: resonator-spectra, stark-calibration, "
                        "efficiency-map, flux-line, noise-psd, parametric-spectroscopy, self-check")
        ->required();
    run_cmd->add_option("--config", config_path, "device config file (defaults built in)");
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--seed", seed, "seed for synthetic noise");
    run_cmd->add_option("--param", params, "scenario parameter key=value (repeatable)");

    CLI::App* check_cmd = app.add_subcommand("self-check", "run the acceptance criteria table");
    check_cmd->add_option("--config", config_path, "device config file (defaults built in)");
    check_cmd->add_option("--out", out_dir, "scratch directory");

    CLI::App* fit_cmd = app.add_subcommand("fit", "fit a model to a two-column CSV");
    fit_cmd->add_option("model", fit_model, "lorentzian | fano | linear | reflection")->required();
    fit_cmd->add_option("csv", fit_csv, "input CSV (x in column 1, y in column 2)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(scenario_name, config_path, out_dir, seed, params);
        if (check_cmd->parsed()) return cmd_self_check(config_path, out_dir);
        if (fit_cmd->parsed()) return cmd_fit(fit_model, fit_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
