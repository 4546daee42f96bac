#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sawmw {

struct ThermalBath {
    double temperature_k = 0.0;
    double mode_frequency_hz = 0.0;

    void validate() const {
        if (temperature_k < 0) throw std::invalid_argument("ThermalBath: negative temperature");
    }
};

/// Cascade of linear gain stages plus a noise floor referred to the chain
/// input (same units as the PSD it acts on).
struct AmplifierChain {
    std::vector<std::pair<std::string, double>> stages;  // (name, gain in dB)
    double noise_floor = 0.0;                            // quanta s^-1 Hz^-1

    double total_gain_linear() const;
};

// Single-sided power spectral density in quanta s^-1 Hz^-1, referenced to the
// MW resonator output plane unless gains_applied says otherwise.
struct NoisePSD {
    std::vector<double> offsets_hz;  // strictly increasing, relative to MW resonance
    std::vector<double> values;
    double background = 0.0;

    struct Meta {
        std::vector<std::pair<std::string, double>> gains_applied;  // (name, dB)
        // Peak area (integral over Hz) and peak height the conversion model
        // produces per unit SAW occupation; fitted areas divide by the former
        // to recover <n_s>.
        double conversion_area = 0.0;
        double conversion_peak = 0.0;
        double bath_temperature_k = 0.0;
        double bath_occupation = 0.0;
    } meta;

    void validate() const {
        if (offsets_hz.size() != values.size())
            throw std::invalid_argument("NoisePSD: grid/value size mismatch");
        for (std::size_t i = 1; i < offsets_hz.size(); ++i)
            if (offsets_hz[i] <= offsets_hz[i - 1])
                throw std::invalid_argument("NoisePSD: grid not strictly increasing");
        for (double v : values)
            if (v < 0) throw std::invalid_argument("NoisePSD: negative value");
    }
};

}  // namespace sawmw
