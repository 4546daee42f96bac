#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sawmw/fit.hpp"
#include "sawmw/noise.hpp"
#include "sawmw/units.hpp"

using namespace sawmw;

namespace {

LinearModeNetwork reference_network() {
    const DeviceConfig cfg = DeviceConfig::reference();
    return conversion_network(cfg.device, cfg.cal.drive1_hz_per_sqrt_mw,
                              cfg.cal.drive2_hz_per_sqrt_mw);
}

std::vector<double> grid_around_zero(double half_span, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = -half_span + 2.0 * half_span * double(i) / double(n - 1);
    return g;
}

}  // namespace

TEST_CASE("Bose-Einstein occupation") {
    CHECK(bose_einstein(781e6, 0.037) == doctest::Approx(0.5701478).epsilon(1e-6));
    CHECK(bose_einstein(781e6, 0.085) == doctest::Approx(1.8043784).epsilon(1e-6));
    CHECK(bose_einstein(781e6, 0.0) == 0.0);
    CHECK_THROWS_AS(bose_einstein(781e6, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(bose_einstein(0.0, 0.01), std::invalid_argument);

    // Monotone up in T, down in frequency.
    CHECK(bose_einstein(781e6, 0.05) > bose_einstein(781e6, 0.037));
    CHECK(bose_einstein(5.05e9, 0.037) < bose_einstein(781e6, 0.037));

    // Rayleigh-Jeans limit within 1% once k_B T / h nu > 20.
    const double nu = 1e6;
    const double t = 25.0 * planck_h * nu / boltzmann_k;
    const double classical = boltzmann_k * t / (planck_h * nu);
    CHECK(bose_einstein(nu, t) == doctest::Approx(classical - 0.5).epsilon(0.01));
    CHECK(std::abs(bose_einstein(nu, t) / classical - 1.0) < 0.03);
}

TEST_CASE("effective temperature is the exact inverse map") {
    CHECK(effective_temperature(0.57, 781e6) * 1e3 == doctest::Approx(36.994).epsilon(1e-4));
    CHECK(effective_temperature(1.8, 781e6) * 1e3 == doctest::Approx(84.833).epsilon(1e-4));
    for (double n : {0.01, 0.57, 1.8, 10.0}) {
        const double t = effective_temperature(n, 781e6);
        CHECK(bose_einstein(781e6, t) == doctest::Approx(n).epsilon(1e-12));
    }
    CHECK_THROWS_AS(effective_temperature(0.0, 781e6), std::invalid_argument);
}

TEST_CASE("up-converted PSD basics") {
    const DeviceConfig cfg = DeviceConfig::reference();
    const LinearModeNetwork net = reference_network();
    const auto grid = grid_around_zero(300e3, 401);

    SUBCASE("zero occupation leaves only the background") {
        const NoisePSD psd = upconverted_psd(cfg.device, net, {0.0, 781e6}, grid, 1e-4);
        for (double v : psd.values) CHECK(v == doctest::Approx(1e-4));
    }

    SUBCASE("peak area scales linearly with occupation") {
        // Occupations spanning [0.01, 10]: area = conversion_area * n exactly
        // in this model; verify through the numeric integral.
        std::vector<double> ns, areas;
        for (double n : {0.01, 0.1, 0.57, 1.8, 5.0, 10.0}) {
            const double t = effective_temperature(n, cfg.device.saw.omega_hz);
            const NoisePSD psd =
                upconverted_psd(cfg.device, net, {t, cfg.device.saw.omega_hz}, grid, 0.0);
            double area = 0.0;
            for (std::size_t i = 1; i < grid.size(); ++i)
                area += 0.5 * (psd.values[i] + psd.values[i - 1]) * (grid[i] - grid[i - 1]);
            ns.push_back(n);
            areas.push_back(area);
        }
        // R^2 of the through-origin fit.
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            sxy += ns[i] * areas[i];
            sxx += ns[i] * ns[i];
            syy += areas[i] * areas[i];
        }
        const double r2 = (sxy * sxy) / (sxx * syy);
        CHECK(r2 > 0.9999);
    }

    SUBCASE("peak width stays within [Gamma, 1.5 Gamma] at the operating point") {
        const ThermalBath bath{0.037, cfg.device.saw.omega_hz};
        const NoisePSD psd = upconverted_psd(cfg.device, net, bath, grid, 0.0);
        const fit::LorentzianFit lf = fit::fit_lorentzian(psd.offsets_hz, psd.values);
        CHECK(lf.fwhm >= cfg.device.saw.linewidth_total_hz);
        CHECK(lf.fwhm <= 1.5 * cfg.device.saw.linewidth_total_hz);
    }

    SUBCASE("fitted area over the conversion factor returns the occupation") {
        const ThermalBath bath{0.037, cfg.device.saw.omega_hz};
        const NoisePSD psd = upconverted_psd(cfg.device, net, bath, grid, 2e-4);
        const fit::LorentzianFit lf = fit::fit_lorentzian(psd.offsets_hz, psd.values);
        CHECK(lf.area / psd.meta.conversion_area ==
              doctest::Approx(psd.meta.bath_occupation).epsilon(0.01));
        CHECK(psd.meta.bath_occupation == doctest::Approx(0.5701478).epsilon(1e-6));
    }
}

TEST_CASE("amplifier chain") {
    NoisePSD psd;
    psd.offsets_hz = {-1.0, 0.0, 1.0};
    psd.values = {1.0, 2.0, 1.0};
    psd.background = 0.5;

    SUBCASE("empty chain is the identity") {
        const NoisePSD out = apply_chain(psd, AmplifierChain{});
        CHECK(out.values == psd.values);
        CHECK(out.background == psd.background);
    }

    SUBCASE("gains add in dB") {
        AmplifierChain chain;
        chain.stages = {{"jpa", 22.0}, {"twpa", 14.0}};
        const NoisePSD out = apply_chain(psd, chain);
        const double g = std::pow(10.0, 3.6);
        CHECK(out.values[1] == doctest::Approx(2.0 * g).epsilon(1e-12));
        CHECK(out.meta.gains_applied.size() == 2);
    }

    SUBCASE("floor only adds a constant offset") {
        AmplifierChain chain;
        chain.noise_floor = 0.25;
        const NoisePSD out = apply_chain(psd, chain);
        for (std::size_t i = 0; i < psd.values.size(); ++i)
            CHECK(out.values[i] == doctest::Approx(psd.values[i] + 0.25));
    }

    SUBCASE("chain action is affine") {
        AmplifierChain chain;
        chain.stages = {{"jpa", 10.0}};
        chain.noise_floor = 0.1;
        NoisePSD doubled = psd;
        for (double& v : doubled.values) v *= 2.0;
        const NoisePSD a = apply_chain(psd, chain);
        const NoisePSD b = apply_chain(doubled, chain);
        for (std::size_t i = 0; i < psd.values.size(); ++i)
            CHECK(b.values[i] - a.values[i] == doctest::Approx(10.0 * psd.values[i]));
    }
}

TEST_CASE("displacement sensitivity") {
    SUBCASE("square-root scaling in the background") {
        const double s1 = displacement_sensitivity(7e-18, 1e-4, 0.08);
        const double s4 = displacement_sensitivity(7e-18, 4e-4, 0.08);
        CHECK(s4 == doctest::Approx(2.0 * s1).epsilon(1e-12));
        CHECK(displacement_sensitivity(7e-18, 0.0, 0.08) == 0.0);
        CHECK_THROWS_AS(displacement_sensitivity(7e-18, 1e-4, 0.0), std::invalid_argument);
    }

    SUBCASE("reference operating point lands at 0.2 am/rtHz") {
        const DeviceConfig cfg = DeviceConfig::reference();
        const LinearModeNetwork net = reference_network();
        const NoisePSD psd = upconverted_psd(cfg.device, net,
                                             {0.037, cfg.device.saw.omega_hz}, {0.0},
                                             cfg.noise.background);
        const double sens = displacement_sensitivity(cfg.device.geometry.x_zpf_m,
                                                     cfg.noise.background,
                                                     psd.meta.conversion_peak);
        CHECK(sens == doctest::Approx(0.2e-18).epsilon(0.05));
    }
}
