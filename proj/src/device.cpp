#include "sawmw/device.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sawmw/units.hpp"

namespace sawmw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double checked_inverse(double denom, double scale, const std::string& what) {
    if (std::abs(denom) < 1e-9 * std::max(scale, 1.0))
        throw std::invalid_argument(what + ": degenerate (resonant) denominator");
    return 1.0 / denom;
}

// Duffing ladder energy of level k over h: k w_e + k(k-1)/2 alpha. Levels
// above |f> get an energy but no coupling; they are not part of the model.
double transmon_level_energy(int k, const TransmonParams& tr) {
    return k * tr.omega_e_hz + 0.5 * k * (k - 1) * tr.alpha_hz();
}

}  // namespace

std::vector<std::string> TransmonParams::warnings() const {
    std::vector<std::string> w;
    if (e_c_hz > 0 && e_j_hz / e_c_hz <= 10.0)
        w.push_back("transmon: E_J/E_C <= 10, outside the transmon regime");
    return w;
}

void TransmonParams::validate() const {
    require(e_c_hz > 0 && e_j_hz > 0, "transmon: energies must be positive");
    require(omega_e_hz > 0 && omega_f_hz > 0, "transmon: level frequencies must be positive");
    require(kappa_f_hz >= 0, "transmon: kappa_f must be nonnegative");
}

void ResonatorParams::validate() const {
    require(omega_hz > 0, "resonator: frequency must be positive");
    require(linewidth_total_hz > 0, "resonator: total linewidth must be positive");
    require(linewidth_external_hz >= 0, "resonator: external linewidth must be nonnegative");
    require(linewidth_external_hz <= linewidth_total_hz,
            "resonator: external linewidth exceeds total");
    require(ports >= 1, "resonator: needs at least one port");
    require(ports * linewidth_external_hz <= linewidth_total_hz,
            "resonator: summed port couplings exceed total linewidth");
}

void CouplingParams::validate() const {
    require(g_mw_hz >= 0 && g_saw_hz >= 0, "coupling: strengths must be nonnegative");
}

double GeometryParams::v_zpf_v() const {
    if (mode_area_m2 <= 0) throw std::invalid_argument("geometry: zero mode area");
    return phi0_v * std::sqrt(1e-12 / mode_area_m2);
}

void GeometryParams::validate() const {
    require(c_idt_f > 0 && c_total_f > 0, "geometry: capacitances must be positive");
    require(c_idt_f <= c_total_f, "geometry: C_IDT exceeds total capacitance");
    require(mode_area_m2 > 0, "geometry: mode area must be positive");
    require(phi0_v >= 0 && x_zpf_m >= 0, "geometry: fluctuations must be nonnegative");
}

void DriveTone::validate() const {
    require(amplitude_hz >= 0, "drive: amplitude must be nonnegative");
}

void DeviceParams::validate() const {
    transmon.validate();
    mw.validate();
    saw.validate();
    coupling.validate();
    geometry.validate();
}

std::vector<std::string> DeviceParams::warnings() const { return transmon.warnings(); }

DeviceConfig DeviceConfig::reference() {
    DeviceConfig cfg;
    cfg.device.transmon = TransmonParams{230e6, 4100e6, 2530e6, 4830e6, 18e6};
    cfg.device.mw = ResonatorParams{5.05e9, 716e3, 152e3, 1};
    cfg.device.saw = ResonatorParams{781e6, 36.6e3, 60.0, 2};
    cfg.device.coupling = CouplingParams{59e6, 6.0e6};
    cfg.device.geometry = GeometryParams{67e-15, 84e-15, 40000e-12, 3.6e-6, 7e-18};
    cfg.cal.drive1_hz_per_sqrt_mw = 1.2e9;
    cfg.cal.drive2_hz_per_sqrt_mw = 1.0e9;
    // Effective f-level pull at the operating point (about -58 MHz at
    // Omega/2pi = 1.2 GHz); the built-in three-level estimate is available by
    // setting these to "auto" in the config.
    cfg.cal.stark_s1_per_hz = -4.0e-11;
    cfg.cal.stark_s2_per_hz = -4.0e-11;
    cfg.cal.saw_pull_hz_per_phonon = -3.0;
    cfg.noise.jpa_gain_db = 22.0;
    cfg.noise.twpa_gain_db = 14.0;
    cfg.noise.background = 6.8e-5;
    return cfg;
}

std::pair<double, double> transmon_levels(double e_j_hz, double e_c_hz) {
    require(e_j_hz > 0 && e_c_hz > 0, "transmon_levels: energies must be positive");
    const double omega_e = std::sqrt(8.0 * e_j_hz * e_c_hz) - e_c_hz;
    return {omega_e, -e_c_hz};
}

double dispersive_shift(double g_hz, double omega_e_hz, double omega_res_hz) {
    const double inv = checked_inverse(omega_e_hz - omega_res_hz,
                                       std::abs(omega_e_hz), "dispersive_shift");
    return g_hz * g_hz * inv;
}

double stark_per_quantum(double chi_hz, double alpha_hz, double omega_res_hz,
                         double omega_e_hz) {
    const double inv = checked_inverse(omega_res_hz - omega_e_hz - alpha_hz,
                                       std::abs(omega_e_hz), "stark_per_quantum");
    return 2.0 * chi_hz * alpha_hz * inv;
}

double parametric_coupling(double g_hz, double alpha_hz, double omega_e_hz,
                           double omega_res_hz, double drive_amp_hz,
                           std::vector<std::string>* warn) {
    const double d1 = omega_e_hz - omega_res_hz;
    const double d2 = omega_e_hz + alpha_hz - omega_res_hz;
    const double inv1 = checked_inverse(d1, std::abs(omega_e_hz), "parametric_coupling");
    const double inv2 = checked_inverse(d2, std::abs(omega_e_hz), "parametric_coupling");
    if (warn && (std::abs(drive_amp_hz) >= std::abs(d1) || std::abs(drive_amp_hz) >= std::abs(d2)))
        warn->push_back("parametric_coupling: drive amplitude outside the perturbative window");
    return (1.0 / std::sqrt(2.0)) * g_hz * alpha_hz * drive_amp_hz * inv1 * inv2;
}

double stark_coefficient(double omega_drive_hz, const TransmonParams& tr) {
    const double w_fe = tr.omega_f_hz - tr.omega_e_hz;
    const double w_e = tr.omega_e_hz;
    const double w_d = std::abs(omega_drive_hz);
    const double scale = std::abs(w_e);
    const double f_plus = checked_inverse(w_fe + w_d, scale, "stark_coefficient");
    const double f_minus = checked_inverse(w_fe - w_d, scale, "stark_coefficient");
    const double g_plus = checked_inverse(w_d + w_e, scale, "stark_coefficient");
    const double g_minus = checked_inverse(w_d - w_e, scale, "stark_coefficient");
    return 0.5 * (f_plus + f_minus) - 0.25 * (g_minus - g_plus);
}

double stark_shift_of_f(const DriveTone& drive1, const DriveTone& drive2,
                        const DeviceParams& p, std::optional<double> s1_override,
                        std::optional<double> s2_override) {
    drive1.validate();
    drive2.validate();
    const double s1 = s1_override ? *s1_override : stark_coefficient(drive1.frequency_hz, p.transmon);
    const double s2 = s2_override ? *s2_override : stark_coefficient(drive2.frequency_hz, p.transmon);
    return s1 * drive1.amplitude_hz * drive1.amplitude_hz +
           s2 * drive2.amplitude_hz * drive2.amplitude_hz;
}

CMatrix build_hamiltonian(const DeviceParams& p, const HilbertConfig& cfg) {
    cfg.validate();
    p.validate();
    const CMatrix a = embed(annihilator(cfg.n_mw), Subsystem::mw, cfg);
    const CMatrix c = embed(annihilator(cfg.n_saw), Subsystem::saw, cfg);
    auto sig = [&](int k, int l) {
        return embed(transmon_projector(k, l, cfg.n_qubit), Subsystem::qubit, cfg);
    };

    CMatrix h = CMatrix::Zero(cfg.dim(), cfg.dim());
    h += p.mw.omega_hz * (a.adjoint() * a);
    h += p.saw.omega_hz * (c.adjoint() * c);
    for (int k = 1; k < cfg.n_qubit; ++k)
        h += transmon_level_energy(k, p.transmon) * sig(k, k);

    const double gm = p.coupling.g_mw_hz;
    const double gs = p.coupling.g_saw_hz;
    const double rt2 = std::sqrt(2.0);
    h += gm * (a.adjoint() * sig(0, 1) + a * sig(1, 0));
    h += gs * (c.adjoint() * sig(0, 1) + c * sig(1, 0));
    h += rt2 * gm * (a.adjoint() * sig(1, 2) + a * sig(2, 1));
    h += rt2 * gs * (c.adjoint() * sig(1, 2) + c * sig(2, 1));
    return angular(1.0) * h;
}

CMatrix parametric_hamiltonian(double g_pm_hz, double g_ps_hz,
                               const std::array<double, 3>& detunings_hz,
                               const HilbertConfig& cfg) {
    cfg.validate();
    const CMatrix a = embed(annihilator(cfg.n_mw), Subsystem::mw, cfg);
    const CMatrix c = embed(annihilator(cfg.n_saw), Subsystem::saw, cfg);
    const CMatrix sig_gf = embed(transmon_projector(0, 2, cfg.n_qubit), Subsystem::qubit, cfg);
    const CMatrix sig_ff = embed(transmon_projector(2, 2, cfg.n_qubit), Subsystem::qubit, cfg);

    CMatrix h = CMatrix::Zero(cfg.dim(), cfg.dim());
    h += detunings_hz[0] * (a.adjoint() * a);
    h += detunings_hz[1] * sig_ff;
    h += detunings_hz[2] * (c.adjoint() * c);
    h += g_pm_hz * (a * sig_gf.adjoint() + a.adjoint() * sig_gf);
    h += g_ps_hz * (c * sig_gf.adjoint() + c.adjoint() * sig_gf);
    return angular(1.0) * h;
}

GeometryCoupling coupling_from_geometry(const GeometryParams& geom) {
    geom.validate();
    GeometryCoupling out;
    out.v_zpf_v = geom.v_zpf_v();
    // e V_zpf C_IDT / C is an energy; dividing by h gives the coupling in
    // ordinary frequency (identically hbar with an angular coupling).
    out.g_saw_hz = elementary_charge * out.v_zpf_v * (geom.c_idt_f / geom.c_total_f) / planck_h;
    out.x_zpf_m = geom.x_zpf_m;
    return out;
}

double coupling_area_scaling(double mode_area_m2) {
    if (mode_area_m2 <= 0) throw std::invalid_argument("coupling_area_scaling: zero area");
    return 0.7e9 * std::sqrt(1e-12 / mode_area_m2);
}

// ---- config file I/O ----

namespace {

enum class UnitClass { frequency, temperature, capacitance, voltage, area, length,
                       gain_db, inv_frequency, plain, count };

const std::map<std::string, std::pair<UnitClass, double>>& unit_table() {
    static const std::map<std::string, std::pair<UnitClass, double>> t = {
        {"GHz", {UnitClass::frequency, 1e9}},   {"MHz", {UnitClass::frequency, 1e6}},
        {"kHz", {UnitClass::frequency, 1e3}},   {"Hz", {UnitClass::frequency, 1.0}},
        {"K", {UnitClass::temperature, 1.0}},   {"mK", {UnitClass::temperature, 1e-3}},
        {"F", {UnitClass::capacitance, 1.0}},   {"pF", {UnitClass::capacitance, 1e-12}},
        {"fF", {UnitClass::capacitance, 1e-15}},
        {"V", {UnitClass::voltage, 1.0}},       {"mV", {UnitClass::voltage, 1e-3}},
        {"uV", {UnitClass::voltage, 1e-6}},     {"nV", {UnitClass::voltage, 1e-9}},
        {"m^2", {UnitClass::area, 1.0}},        {"um^2", {UnitClass::area, 1e-12}},
        {"m", {UnitClass::length, 1.0}},        {"um", {UnitClass::length, 1e-6}},
        {"nm", {UnitClass::length, 1e-9}},      {"am", {UnitClass::length, 1e-18}},
        {"dB", {UnitClass::gain_db, 1.0}},
        {"1/Hz", {UnitClass::inv_frequency, 1.0}},
        {"1/MHz", {UnitClass::inv_frequency, 1e-6}},
        {"1/GHz", {UnitClass::inv_frequency, 1e-9}},
    };
    return t;
}

struct KeySpec {
    UnitClass unit;
    std::function<void(DeviceConfig&, double)> set;
    std::function<double(const DeviceConfig&)> get;
    bool allows_auto = false;
};

const std::map<std::string, KeySpec>& key_table() {
    using C = DeviceConfig;
    static const std::map<std::string, KeySpec> t = {
        {"transmon.e_c", {UnitClass::frequency,
            [](C& c, double v) { c.device.transmon.e_c_hz = v; },
            [](const C& c) { return c.device.transmon.e_c_hz; }}},
        {"transmon.e_j", {UnitClass::frequency,
            [](C& c, double v) { c.device.transmon.e_j_hz = v; },
            [](const C& c) { return c.device.transmon.e_j_hz; }}},
        {"transmon.omega_e", {UnitClass::frequency,
            [](C& c, double v) { c.device.transmon.omega_e_hz = v; },
            [](const C& c) { return c.device.transmon.omega_e_hz; }}},
        {"transmon.omega_f", {UnitClass::frequency,
            [](C& c, double v) { c.device.transmon.omega_f_hz = v; },
            [](const C& c) { return c.device.transmon.omega_f_hz; }}},
        {"transmon.kappa_f", {UnitClass::frequency,
            [](C& c, double v) { c.device.transmon.kappa_f_hz = v; },
            [](const C& c) { return c.device.transmon.kappa_f_hz; }}},
        {"mw.omega", {UnitClass::frequency,
            [](C& c, double v) { c.device.mw.omega_hz = v; },
            [](const C& c) { return c.device.mw.omega_hz; }}},
        {"mw.linewidth_total", {UnitClass::frequency,
            [](C& c, double v) { c.device.mw.linewidth_total_hz = v; },
            [](const C& c) { return c.device.mw.linewidth_total_hz; }}},
        {"mw.linewidth_external", {UnitClass::frequency,
            [](C& c, double v) { c.device.mw.linewidth_external_hz = v; },
            [](const C& c) { return c.device.mw.linewidth_external_hz; }}},
        {"mw.ports", {UnitClass::count,
            [](C& c, double v) { c.device.mw.ports = int(v); },
            [](const C& c) { return double(c.device.mw.ports); }}},
        {"saw.omega", {UnitClass::frequency,
            [](C& c, double v) { c.device.saw.omega_hz = v; },
            [](const C& c) { return c.device.saw.omega_hz; }}},
        {"saw.linewidth_total", {UnitClass::frequency,
            [](C& c, double v) { c.device.saw.linewidth_total_hz = v; },
            [](const C& c) { return c.device.saw.linewidth_total_hz; }}},
        {"saw.linewidth_external", {UnitClass::frequency,
            [](C& c, double v) { c.device.saw.linewidth_external_hz = v; },
            [](const C& c) { return c.device.saw.linewidth_external_hz; }}},
        {"saw.ports", {UnitClass::count,
            [](C& c, double v) { c.device.saw.ports = int(v); },
            [](const C& c) { return double(c.device.saw.ports); }}},
        {"coupling.g_mw", {UnitClass::frequency,
            [](C& c, double v) { c.device.coupling.g_mw_hz = v; },
            [](const C& c) { return c.device.coupling.g_mw_hz; }}},
        {"coupling.g_saw", {UnitClass::frequency,
            [](C& c, double v) { c.device.coupling.g_saw_hz = v; },
            [](const C& c) { return c.device.coupling.g_saw_hz; }}},
        {"geometry.c_idt", {UnitClass::capacitance,
            [](C& c, double v) { c.device.geometry.c_idt_f = v; },
            [](const C& c) { return c.device.geometry.c_idt_f; }}},
        {"geometry.c_total", {UnitClass::capacitance,
            [](C& c, double v) { c.device.geometry.c_total_f = v; },
            [](const C& c) { return c.device.geometry.c_total_f; }}},
        {"geometry.mode_area", {UnitClass::area,
            [](C& c, double v) { c.device.geometry.mode_area_m2 = v; },
            [](const C& c) { return c.device.geometry.mode_area_m2; }}},
        {"geometry.phi0", {UnitClass::voltage,
            [](C& c, double v) { c.device.geometry.phi0_v = v; },
            [](const C& c) { return c.device.geometry.phi0_v; }}},
        {"geometry.x_zpf", {UnitClass::length,
            [](C& c, double v) { c.device.geometry.x_zpf_m = v; },
            [](const C& c) { return c.device.geometry.x_zpf_m; }}},
        {"cal.drive1_amplitude_at_1mw", {UnitClass::frequency,
            [](C& c, double v) { c.cal.drive1_hz_per_sqrt_mw = v; },
            [](const C& c) { return c.cal.drive1_hz_per_sqrt_mw; }}},
        {"cal.drive2_amplitude_at_1mw", {UnitClass::frequency,
            [](C& c, double v) { c.cal.drive2_hz_per_sqrt_mw = v; },
            [](const C& c) { return c.cal.drive2_hz_per_sqrt_mw; }}},
        {"cal.stark_s1", {UnitClass::inv_frequency,
            [](C& c, double v) { c.cal.stark_s1_per_hz = v; },
            [](const C& c) { return c.cal.stark_s1_per_hz.value_or(0.0); }, true}},
        {"cal.stark_s2", {UnitClass::inv_frequency,
            [](C& c, double v) { c.cal.stark_s2_per_hz = v; },
            [](const C& c) { return c.cal.stark_s2_per_hz.value_or(0.0); }, true}},
        {"cal.saw_pull_per_phonon", {UnitClass::frequency,
            [](C& c, double v) { c.cal.saw_pull_hz_per_phonon = v; },
            [](const C& c) { return c.cal.saw_pull_hz_per_phonon; }}},
        {"noise.jpa_gain", {UnitClass::gain_db,
            [](C& c, double v) { c.noise.jpa_gain_db = v; },
            [](const C& c) { return c.noise.jpa_gain_db; }}},
        {"noise.twpa_gain", {UnitClass::gain_db,
            [](C& c, double v) { c.noise.twpa_gain_db = v; },
            [](const C& c) { return c.noise.twpa_gain_db; }}},
        {"noise.background", {UnitClass::plain,
            [](C& c, double v) { c.noise.background = v; },
            [](const C& c) { return c.noise.background; }}},
    };
    return t;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

DeviceConfig parse_config(const std::string& text) {
    DeviceConfig cfg = DeviceConfig::reference();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": missing '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        const auto kit = key_table().find(key);
        if (kit == key_table().end())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        const KeySpec& spec = kit->second;

        if (spec.allows_auto && value == "auto") {
            if (key == "cal.stark_s1") cfg.cal.stark_s1_per_hz.reset();
            if (key == "cal.stark_s2") cfg.cal.stark_s2_per_hz.reset();
            continue;
        }

        std::istringstream vs(value);
        double number = 0.0;
        std::string unit;
        if (!(vs >> number))
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected a number for '" + key + "'");
        vs >> unit;

        double factor = 1.0;
        if (!unit.empty()) {
            const auto uit = unit_table().find(unit);
            if (uit == unit_table().end())
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": unknown unit '" + unit + "'");
            if (uit->second.first != spec.unit)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": unit '" + unit + "' does not fit key '" + key + "'");
            factor = uit->second.second;
        } else if (spec.unit != UnitClass::plain && spec.unit != UnitClass::count) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": key '" + key + "' requires a unit");
        }
        spec.set(cfg, number * factor);
    }
    cfg.device.validate();
    return cfg;
}

DeviceConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const DeviceConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    auto freq = [&](const std::string& key, double hz) { out << key << " = " << hz << " Hz\n"; };
    freq("transmon.e_c", cfg.device.transmon.e_c_hz);
    freq("transmon.e_j", cfg.device.transmon.e_j_hz);
    freq("transmon.omega_e", cfg.device.transmon.omega_e_hz);
    freq("transmon.omega_f", cfg.device.transmon.omega_f_hz);
    freq("transmon.kappa_f", cfg.device.transmon.kappa_f_hz);
    freq("mw.omega", cfg.device.mw.omega_hz);
    freq("mw.linewidth_total", cfg.device.mw.linewidth_total_hz);
    freq("mw.linewidth_external", cfg.device.mw.linewidth_external_hz);
    out << "mw.ports = " << cfg.device.mw.ports << "\n";
    freq("saw.omega", cfg.device.saw.omega_hz);
    freq("saw.linewidth_total", cfg.device.saw.linewidth_total_hz);
    freq("saw.linewidth_external", cfg.device.saw.linewidth_external_hz);
    out << "saw.ports = " << cfg.device.saw.ports << "\n";
    freq("coupling.g_mw", cfg.device.coupling.g_mw_hz);
    freq("coupling.g_saw", cfg.device.coupling.g_saw_hz);
    out << "geometry.c_idt = " << cfg.device.geometry.c_idt_f << " F\n";
    out << "geometry.c_total = " << cfg.device.geometry.c_total_f << " F\n";
    out << "geometry.mode_area = " << cfg.device.geometry.mode_area_m2 << " m^2\n";
    out << "geometry.phi0 = " << cfg.device.geometry.phi0_v << " V\n";
    out << "geometry.x_zpf = " << cfg.device.geometry.x_zpf_m << " m\n";
    freq("cal.drive1_amplitude_at_1mw", cfg.cal.drive1_hz_per_sqrt_mw);
    freq("cal.drive2_amplitude_at_1mw", cfg.cal.drive2_hz_per_sqrt_mw);
    if (cfg.cal.stark_s1_per_hz)
        out << "cal.stark_s1 = " << *cfg.cal.stark_s1_per_hz << " 1/Hz\n";
    else
        out << "cal.stark_s1 = auto\n";
    if (cfg.cal.stark_s2_per_hz)
        out << "cal.stark_s2 = " << *cfg.cal.stark_s2_per_hz << " 1/Hz\n";
    else
        out << "cal.stark_s2 = auto\n";
    freq("cal.saw_pull_per_phonon", cfg.cal.saw_pull_hz_per_phonon);
    out << "noise.jpa_gain = " << cfg.noise.jpa_gain_db << " dB\n";
    out << "noise.twpa_gain = " << cfg.noise.twpa_gain_db << " dB\n";
    out << "noise.background = " << cfg.noise.background << "\n";
    return out.str();
}

}  // namespace sawmw
