#pragma once

#include <cmath>

// Unit conventions used throughout the library:
//   - quantum operators, Lindblad rates and evolution times are angular
//     (rad/s and seconds),
//   - every public interface that talks about a frequency, a linewidth or a
//     coupling uses ordinary frequency in Hz,
//   - the functions below are the only place where the two meet.

namespace sawmw {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// CODATA 2018 exact values.
inline constexpr double planck_h = 6.62607015e-34;        // J s
inline constexpr double planck_hbar = 1.054571817e-34;    // J s
inline constexpr double boltzmann_k = 1.380649e-23;       // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C

constexpr double angular(double hz) { return two_pi * hz; }
constexpr double ordinary(double rad_per_s) { return rad_per_s / two_pi; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace sawmw
