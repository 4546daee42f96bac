#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sawmw {
namespace fit {

// Damped least squares, Marquardt scaling: solve
// (J^T J + lambda diag(J^T J)) step = -J^T r, multiply lambda by 10 on a
// rejected step and by 0.1 on an accepted one. Deterministic; the Jacobian is
// forward-difference unless the model supplies one.
struct LevMarOptions {
    int max_iterations = 200;
    double step_tol = 1e-10;  // relative parameter step
    double lambda_init = 1e-3;
};

struct LevMarResult {
    Eigen::VectorXd params;
    Eigen::MatrixXd covariance;  // sigma^2 (J^T J)^-1, residual-variance scaled
    double residual_rms = 0.0;
    int iterations = 0;
    bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

LevMarResult levmar(const ResidualFn& residual, const Eigen::VectorXd& p0,
                    const LevMarOptions& opt = {});

// ---- models ----

/// y = offset + (2 area / (pi fwhm)) / (1 + 4 (x - center)^2 / fwhm^2);
/// `area` is the full integral of the peak above the offset.
double lorentzian_model(double x, double center, double fwhm, double area, double offset);

/// y = offset + amplitude (q fwhm/2 + (x - center))^2
///              / ((fwhm/2)^2 + (x - center)^2)
double fano_model(double x, double center, double fwhm, double amplitude, double offset,
                  double q);

/// One-port reflection, e^{-i w t} phasors:
/// S11(f) = 1 - gamma_ex / (i (f - f0) + gamma/2).
std::complex<double> reflection_model(double f, double f0, double gamma, double gamma_ex);

// ---- results ----

struct LorentzianFit {
    double center = 0.0;
    double fwhm = 0.0;
    double area = 0.0;
    double offset = 0.0;
    std::array<double, 4> sigma{};  // 1-sigma per parameter, same order
    double residual_rms = 0.0;
    int iterations = 0;
    bool converged = false;

    std::string to_json() const;
};

struct FanoFit {
    double center = 0.0;
    double fwhm = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double q = 0.0;
    std::array<double, 5> sigma{};
    double residual_rms = 0.0;
    int iterations = 0;
    bool converged = false;

    std::string to_json() const;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_sigma = 0.0;
    double intercept_sigma = 0.0;
    double r_squared = 0.0;
    double residual_rms = 0.0;

    std::string to_json() const;
};

struct ReflectionFit {
    double omega0_hz = 0.0;
    double total_hz = 0.0;
    double external_hz = 0.0;
    double scale = 1.0;
    // Magnitude-only traces cannot tell gamma_ex from gamma - gamma_ex; the
    // undercoupled branch is returned and this flag raised.
    bool coupling_ambiguous = false;
    double residual_rms = 0.0;
    bool converged = false;

    std::string to_json() const;
};

// ---- fits ----

/// Levenberg-Marquardt Lorentzian fit. Without an initial guess, starts from
/// the peak location, the half-maximum crossings and the baseline median.
/// Warns (returns normally) below 5 points or 2 linewidths of span; throws on
/// degenerate data or non-convergence.
LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                             std::optional<std::array<double, 4>> init = std::nullopt,
                             std::vector<std::string>* warnings = nullptr);

FanoFit fit_fano(const std::vector<double>& x, const std::vector<double>& y,
                 std::optional<std::array<double, 5>> init = std::nullopt,
                 std::vector<std::string>* warnings = nullptr);

/// Ordinary least squares with closed-form standard errors.
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

/// Resonator linewidths from a complex reflection trace (phase resolves the
/// coupling branch)...
ReflectionFit reflection_linewidths(const std::vector<double>& freq_hz,
                                    const std::vector<std::complex<double>>& s11);

/// ...or from |S11|^2 only, in which case the undercoupled branch is returned
/// with the ambiguity flag set.
ReflectionFit reflection_linewidths(const std::vector<double>& freq_hz,
                                    const std::vector<double>& s11_mag_sq);

}  // namespace fit
}  // namespace sawmw
