#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sawmw/device.hpp"
#include "sawmw/rng.hpp"
#include "sawmw/units.hpp"

using namespace sawmw;

TEST_CASE("transmon level estimates") {
    const auto [we1, a1] = transmon_levels(4100e6, 230e6);
    CHECK(we1 == doctest::Approx(2516.63e6).epsilon(1e-4));
    CHECK(a1 == -230e6);

    const auto [we2, a2] = transmon_levels(8200e6, 115e6);
    CHECK(we2 == doctest::Approx(2631.63e6).epsilon(1e-4));
    CHECK(a2 == -115e6);

    // alpha = -E_C identically.
    GaussianStream rng(7);
    for (int i = 0; i < 20; ++i) {
        const double ec = 50e6 + 400e6 * rng.uniform();
        const double ej = 1e9 + 9e9 * rng.uniform();
        CHECK(transmon_levels(ej, ec).second == -ec);
    }
    CHECK_THROWS_AS(transmon_levels(-1.0, 230e6), std::invalid_argument);
}

TEST_CASE("dispersive shift formula") {
    CHECK(dispersive_shift(0.0, 2530e6, 5050e6) == 0.0);
    CHECK(dispersive_shift(59e6, 2530e6, 5050e6) == doctest::Approx(-1.3813492e6).epsilon(1e-6));
    CHECK(dispersive_shift(6.0e6, 2530e6, 781e6) == doctest::Approx(20583.2e0).epsilon(1e-4));
    CHECK_THROWS_AS(dispersive_shift(59e6, 2530e6, 2530e6), std::invalid_argument);
}

TEST_CASE("Stark shift per intra-resonator quantum") {
    CHECK(stark_per_quantum(0.0, -230e6, 5050e6, 2530e6) == 0.0);

    const double chi_m = dispersive_shift(59e6, 2530e6, 5050e6);
    CHECK(stark_per_quantum(chi_m, -230e6, 5050e6, 2530e6) ==
          doctest::Approx(231062.0).epsilon(1e-4));

    const double chi_s = dispersive_shift(6.0e6, 2530e6, 781e6);
    CHECK(stark_per_quantum(chi_s, -230e6, 781e6, 2530e6) ==
          doctest::Approx(6233.2).epsilon(1e-4));

    // Degenerate when omega_res = omega_e + alpha.
    CHECK_THROWS_AS(stark_per_quantum(1e6, -230e6, 2300e6, 2530e6), std::invalid_argument);
}

TEST_CASE("drive-induced parametric coupling strength") {
    CHECK(parametric_coupling(59e6, -230e6, 2530e6, 5050e6, 0.0) == 0.0);

    const double g_pm = parametric_coupling(59e6, -230e6, 2530e6, 5050e6, 1200e6);
    CHECK(std::abs(g_pm) == doctest::Approx(1.6615479e6).epsilon(1e-6));

    const double g_ps = parametric_coupling(6.0e6, -230e6, 2530e6, 781e6, 1000e6);
    CHECK(std::abs(g_ps) == doctest::Approx(0.3672963e6).epsilon(1e-6));

    // Linear in drive amplitude and in g; sign follows alpha.
    CHECK(parametric_coupling(59e6, -230e6, 2530e6, 5050e6, 600e6) ==
          doctest::Approx(0.5 * g_pm));
    CHECK(parametric_coupling(29.5e6, -230e6, 2530e6, 5050e6, 1200e6) ==
          doctest::Approx(0.5 * g_pm));
    CHECK(parametric_coupling(59e6, 230e6, 2530e6, 5050e6, 1200e6) * g_pm < 0.0);

    std::vector<std::string> warn;
    parametric_coupling(59e6, -230e6, 2530e6, 5050e6, 5000e6, &warn);
    CHECK(!warn.empty());
}

TEST_CASE("Stark coefficient and f-level shift") {
    const TransmonParams tr = DeviceConfig::reference().device.transmon;
    const DeviceParams dev = DeviceConfig::reference().device;

    CHECK(stark_shift_of_f(DriveTone{220e6, 0.0, "2"}, DriveTone{4049e6, 0.0, "2"}, dev) == 0.0);

    // Quadratic form: doubling one amplitude quadruples its contribution.
    const DriveTone off{4049e6, 0.0, "2"};
    const double s1 = stark_shift_of_f(DriveTone{220e6, 100e6, "2"}, off, dev);
    const double s4 = stark_shift_of_f(DriveTone{220e6, 200e6, "2"}, off, dev);
    CHECK(s4 == doctest::Approx(4.0 * s1).epsilon(1e-12));

    // Constant-shift contour is a straight line in power (Omega^2) space.
    const double sa = stark_coefficient(220e6, tr);
    const double sb = stark_coefficient(4049e6, tr);
    const double target = -40e6;
    std::vector<double> p1, p2;
    for (double w1_sq = 0.0; w1_sq <= 1e18; w1_sq += 2e17) {
        const double w2_sq = (target - sa * w1_sq) / sb;
        if (w2_sq < 0) continue;
        const double shift = stark_shift_of_f(DriveTone{220e6, std::sqrt(w1_sq), "2"},
                                              DriveTone{4049e6, std::sqrt(w2_sq), "2"}, dev);
        CHECK(shift == doctest::Approx(target).epsilon(1e-9));
        p1.push_back(w1_sq);
        p2.push_back(w2_sq);
    }
    REQUIRE(p1.size() >= 3);
    // Collinearity of the contour points.
    const double slope = (p2.back() - p2.front()) / (p1.back() - p1.front());
    for (std::size_t i = 0; i < p1.size(); ++i)
        CHECK(p2[i] == doctest::Approx(p2.front() + slope * (p1[i] - p1.front())).epsilon(1e-9));

    CHECK_THROWS_AS(stark_coefficient(tr.omega_e_hz, tr), std::invalid_argument);
}

TEST_CASE("full lab-frame Hamiltonian") {
    DeviceParams dev = DeviceConfig::reference().device;
    const HilbertConfig cfg{3, 3, 3};

    SUBCASE("couplings off: diagonal ladder energies") {
        dev.coupling = CouplingParams{0.0, 0.0};
        const CMatrix h = build_hamiltonian(dev, cfg);
        for (int im = 0; im < 3; ++im)
            for (int iq = 0; iq < 3; ++iq)
                for (int is = 0; is < 3; ++is) {
                    const double levels[] = {0.0, dev.transmon.omega_e_hz,
                                             dev.transmon.omega_f_hz};
                    const double expected =
                        angular(im * dev.mw.omega_hz + is * dev.saw.omega_hz + levels[iq]);
                    CHECK(h(cfg.index(im, iq, is), cfg.index(im, iq, is)).real() ==
                          doctest::Approx(expected));
                }
        CHECK((h - h.adjoint()).norm() < 1e-12 * h.norm());
    }

    SUBCASE("exchange matrix elements, including the sqrt(2)-enhanced e-f row") {
        const CMatrix h = build_hamiltonian(dev, cfg);
        // <g, 1_m, 0_s | H | e, 0_m, 0_s> = g_m
        CHECK(h(cfg.index(1, 0, 0), cfg.index(0, 1, 0)).real() ==
              doctest::Approx(angular(dev.coupling.g_mw_hz)));
        // <e, 1_s | H | f, 0_s> = sqrt(2) g_s
        CHECK(h(cfg.index(0, 1, 1), cfg.index(0, 2, 0)).real() ==
              doctest::Approx(std::sqrt(2.0) * angular(dev.coupling.g_saw_hz)));
        CHECK((h - h.adjoint()).norm() < 1e-12 * h.norm());
    }
}

TEST_CASE("numerical diagonalization reproduces the dispersive pull") {
    const DeviceParams dev = DeviceConfig::reference().device;
    const HilbertConfig cfg{4, 3, 4};
    const CMatrix h = build_hamiltonian(dev, cfg);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);

    auto dressed_energy = [&](int im, int iq, int is) {
        const int bare = cfg.index(im, iq, is);
        int best = 0;
        double best_w = 0.0;
        for (int k = 0; k < cfg.dim(); ++k) {
            const double w = std::norm(es.eigenvectors()(bare, k));
            if (w > best_w) {
                best_w = w;
                best = k;
            }
        }
        return es.eigenvalues()(best);
    };

    const double omega_dressed =
        (dressed_energy(1, 0, 0) - dressed_energy(0, 0, 0)) / two_pi;
    const double chi_m = dispersive_shift(dev.coupling.g_mw_hz, dev.transmon.omega_e_hz,
                                          dev.mw.omega_hz);
    const double shift = omega_dressed - dev.mw.omega_hz;
    // Qubit-in-g resonator sits at omega_m - chi_m within 10% (perturbative).
    CHECK(shift == doctest::Approx(-chi_m).epsilon(0.10));
}

TEST_CASE("rotating-frame parametric Hamiltonian") {
    const HilbertConfig cfg{3, 3, 2};
    SUBCASE("zero couplings and detunings give the zero matrix") {
        CHECK(parametric_hamiltonian(0.0, 0.0, {0, 0, 0}, cfg).norm() == 0.0);
    }
    SUBCASE("beam-splitter matrix element") {
        const CMatrix h = parametric_hamiltonian(1.66e6, 0.37e6, {0, 0, 0}, cfg);
        CHECK(h(cfg.index(1, 0, 0), cfg.index(0, 2, 0)).real() ==
              doctest::Approx(angular(1.66e6)));
        CHECK((h - h.adjoint()).norm() < 1e-12 * h.norm());
    }
    SUBCASE("drive-frame arithmetic at the reference frequencies") {
        const DeviceParams dev = DeviceConfig::reference().device;
        CHECK(dev.mw.omega_hz - dev.transmon.omega_f_hz == doctest::Approx(220e6));
        CHECK(dev.transmon.omega_f_hz - dev.saw.omega_hz == doctest::Approx(4049e6));
    }
}

TEST_CASE("zero-point geometry chain") {
    const GeometryParams geom = DeviceConfig::reference().device.geometry;
    const GeometryCoupling gc = coupling_from_geometry(geom);

    CHECK(gc.v_zpf_v == doctest::Approx(18e-9).epsilon(1e-12));
    CHECK(gc.x_zpf_m == 7e-18);
    // e V_zpf (C_IDT / C) / h with the values above.
    CHECK(gc.g_saw_hz == doctest::Approx(3.4716e6).epsilon(1e-4));

    CHECK(coupling_area_scaling(40000e-12) == doctest::Approx(3.5e6).epsilon(1e-12));

    // V_zpf -> 0 as the mode area grows.
    GeometryParams big = geom;
    big.mode_area_m2 = 1.0;
    CHECK(coupling_from_geometry(big).v_zpf_v < 1e-11);
    CHECK_THROWS_AS(coupling_area_scaling(0.0), std::invalid_argument);

    // phi0 = v_zpf sqrt(A / 1 um^2) exactly, over random areas.
    GaussianStream rng(11);
    for (int i = 0; i < 20; ++i) {
        GeometryParams g2 = geom;
        g2.mode_area_m2 = 1e-12 * (1.0 + 1e5 * rng.uniform());
        const double back = g2.v_zpf_v() * std::sqrt(g2.mode_area_m2 / 1e-12);
        CHECK(back == doctest::Approx(g2.phi0_v).epsilon(1e-14));
    }
}

TEST_CASE("config round trip and unit handling") {
    const DeviceConfig ref = DeviceConfig::reference();
    const DeviceConfig back = parse_config(serialize_config(ref));
    CHECK(back.device.mw.omega_hz == ref.device.mw.omega_hz);
    CHECK(back.device.saw.linewidth_external_hz == ref.device.saw.linewidth_external_hz);
    CHECK(back.device.geometry.c_idt_f == ref.device.geometry.c_idt_f);
    CHECK(back.cal.stark_s1_per_hz == ref.cal.stark_s1_per_hz);
    CHECK(back.noise.background == ref.noise.background);

    const DeviceConfig cfg = parse_config(
        "# comment\n"
        "mw.omega = 5.05 GHz\n"
        "saw.linewidth_total = 36.6 kHz   # inline comment\n"
        "geometry.phi0 = 3.6 uV\n"
        "cal.stark_s1 = auto\n");
    CHECK(cfg.device.mw.omega_hz == doctest::Approx(5.05e9));
    CHECK(cfg.device.saw.linewidth_total_hz == doctest::Approx(36.6e3));
    CHECK(cfg.device.geometry.phi0_v == doctest::Approx(3.6e-6));
    CHECK(!cfg.cal.stark_s1_per_hz.has_value());

    CHECK_THROWS(parse_config("bogus.key = 1 Hz\n"));
    CHECK_THROWS(parse_config("mw.omega = 5.05 parsec\n"));
    CHECK_THROWS(parse_config("mw.omega = 5.05 uV\n"));   // wrong dimension
    CHECK_THROWS(parse_config("mw.omega = 5.05\n"));      // missing unit
    CHECK_THROWS(parse_config("mw.omega 5.05 GHz\n"));    // missing '='

    // Soft warning outside the transmon regime.
    DeviceConfig weird = ref;
    weird.device.transmon.e_j_hz = 5 * weird.device.transmon.e_c_hz;
    CHECK(!weird.device.warnings().empty());
}
