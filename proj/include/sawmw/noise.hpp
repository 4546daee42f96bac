#pragma once

#include <vector>

#include "sawmw/cmt.hpp"
#include "sawmw/noise_types.hpp"

namespace sawmw {

/// Bose-Einstein occupation n = 1 / (exp(h nu / k_B T) - 1); zero at T = 0.
double bose_einstein(double omega_hz, double temperature_k);

/// Inverse map T = h nu / (k_B ln(1 + 1/n)); exact inverse of bose_einstein.
double effective_temperature(double occupation, double omega_hz);

/// Thermal SAW noise up-converted to the MW output port:
///
///   S(nu) = gamma_ex |G_ms(nu)|^2 Gamma_int n_s + background
///
/// in quanta s^-1 Hz^-1 at the resonator output plane (before amplification),
/// with G the network Green function and Gamma_int the intrinsic SAW rate
/// feeding the bath. Metadata records the per-unit-occupation peak area and
/// height of the conversion model, which the fitting pipeline divides out to
/// recover <n_s>.
NoisePSD upconverted_psd(const DeviceParams& p, const LinearModeNetwork& net,
                         const ThermalBath& bath, const std::vector<double>& grid_hz,
                         double background = 0.0);

/// Applies the amplifier chain: multiplies by the total linear gain and adds
/// the input-referred floor (amplified alongside the signal).
NoisePSD apply_chain(const NoisePSD& psd, const AmplifierChain& chain);

/// Displacement sensitivity x_zpf * sqrt(background / conversion), m/rtHz.
/// `conversion` is the model PSD peak height per unit occupation (see
/// NoisePSD::Meta::conversion_peak); background/conversion is then the
/// noise-equivalent phonon occupation of the floor.
double displacement_sensitivity(double x_zpf_m, double background, double conversion);

}  // namespace sawmw
