#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sawmw {

// Synthetic-noise generator: mt19937_64 feeding an explicit Box-Muller
// transform. Spelled out (rather than std::normal_distribution) so that a
// (seed -> sample sequence) mapping is part of the output contract and does
// not depend on the standard library implementation.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1), 53-bit
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sawmw
