#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sawmw/csvio.hpp"
#include "sawmw/device.hpp"

namespace sawmw {

extern const char* const kLibraryVersion;

struct Scenario {
    std::string name;  // resonator-spectra | stark-calibration | efficiency-map |
                       // flux-line | noise-psd | parametric-spectroscopy | self-check
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;

    static const std::vector<std::string>& known_names();

    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
};

struct RunManifest {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> module_versions;
    double wall_time_s = 0.0;
    std::vector<std::pair<std::string, std::uint64_t>> outputs;  // (path, FNV-1a hash)
    bool passed = true;

    std::string to_json() const;
};

/// Runs one scenario against a device config, writing CSV data files, a JSON
/// manifest and a human-readable summary (with pass/fail flags against the
/// reference values) into out_dir. Numeric outputs are byte-deterministic in
/// (config, seed).
RunManifest run(const Scenario& scenario, const DeviceConfig& cfg, const std::string& out_dir);

/// Parametric transition spectroscopy: sweeps the drive frequency across the
/// g,f <-> resonator resonance and computes the MW reflection change through
/// the Lindblad steady state of the driven qubit-resonator pair. Columns:
/// drive_freq_hz, delta_s11_sq, f_population.
CsvTable parametric_spectroscopy(const DeviceConfig& cfg, Subsystem which,
                                 double drive_amplitude_hz, double span_hz, int points);

}  // namespace sawmw
