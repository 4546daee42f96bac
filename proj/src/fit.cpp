#include "sawmw/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sawmw {
namespace fit {

namespace {

Eigen::MatrixXd forward_jacobian(const ResidualFn& residual, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& r0) {
    const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    Eigen::MatrixXd j(r0.size(), p.size());
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double h = sqrt_eps * std::max(std::abs(p(k)), 1e-30);
        Eigen::VectorXd pk = p;
        pk(k) += h;
        j.col(k) = (residual(pk) - r0) / h;
    }
    return j;
}

}  // namespace

LevMarResult levmar(const ResidualFn& residual, const Eigen::VectorXd& p0,
                    const LevMarOptions& opt) {
    LevMarResult out;
    Eigen::VectorXd p = p0;
    Eigen::VectorXd r = residual(p);
    if (r.size() <= p.size())
        throw std::invalid_argument("levmar: fewer residuals than parameters");
    double cost = r.squaredNorm();
    const double cost_floor = 1e-24 * cost;  // 12 decades below the initial misfit
    double lambda = opt.lambda_init;

    Eigen::MatrixXd j = forward_jacobian(residual, p, r);
    bool refresh_jacobian = false;

    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        if (refresh_jacobian) {
            j = forward_jacobian(residual, p, r);
            refresh_jacobian = false;
        }
        const Eigen::MatrixXd jtj = j.transpose() * j;
        const Eigen::VectorXd jtr = j.transpose() * r;

        Eigen::MatrixXd damped = jtj;
        for (Eigen::Index k = 0; k < p.size(); ++k) {
            const double d = jtj(k, k);
            damped(k, k) += lambda * (d > 0 ? d : 1.0);
        }
        const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
        if (!step.allFinite()) {
            lambda *= 10.0;
            continue;
        }

        const Eigen::VectorXd p_new = p + step;
        const double rel_step =
            (step.cwiseQuotient(p_new.cwiseAbs().cwiseMax(1e-30))).cwiseAbs().maxCoeff();
        const Eigen::VectorXd r_new = residual(p_new);
        const double cost_new = r_new.squaredNorm();
        if (cost_new < cost) {
            p = p_new;
            r = r_new;
            cost = cost_new;
            lambda *= 0.1;
            refresh_jacobian = true;
            if (rel_step < opt.step_tol) {
                out.converged = true;
                ++iter;
                break;
            }
        } else {
            // At the double-precision floor the cost cannot improve; a step
            // proposal below tolerance means the minimum is reached.
            if (rel_step < opt.step_tol) {
                out.converged = true;
                ++iter;
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e14) break;  // stuck; report non-convergence
        }
    }

    out.params = p;
    out.iterations = iter;
    const Eigen::Index dof = r.size() - p.size();
    out.residual_rms = std::sqrt(cost / double(r.size()));
    const double sigma2 = cost / double(dof);
    if (refresh_jacobian) j = forward_jacobian(residual, p, r);
    const Eigen::MatrixXd jtj = j.transpose() * j;
    out.covariance = sigma2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
    return out;
}

double lorentzian_model(double x, double center, double fwhm, double area, double offset) {
    const double u = 2.0 * (x - center) / fwhm;
    return offset + (2.0 * area / (M_PI * fwhm)) / (1.0 + u * u);
}

double fano_model(double x, double center, double fwhm, double amplitude, double offset,
                  double q) {
    const double hw = 0.5 * fwhm;
    const double dx = x - center;
    const double num = q * hw + dx;
    return offset + amplitude * num * num / (hw * hw + dx * dx);
}

std::complex<double> reflection_model(double f, double f0, double gamma, double gamma_ex) {
    const std::complex<double> i_unit(0.0, 1.0);
    return 1.0 - gamma_ex / (i_unit * (f - f0) + 0.5 * gamma);
}

namespace {

struct PeakGuess {
    double center, fwhm, height, offset;
};

void check_xy(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit: x/y size mismatch");
    if (x.empty()) throw std::invalid_argument("fit: empty data");
    double ymin = y[0], ymax = y[0];
    for (double v : y) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    if (ymax == ymin) throw std::invalid_argument("fit: degenerate data (zero variance)");
}

// Peak location, half-maximum crossings and baseline median. Works for peaks
// and dips (height is signed).
PeakGuess guess_peak(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> sorted = y;
    std::sort(sorted.begin(), sorted.end());
    const double baseline = sorted[sorted.size() / 2];

    std::size_t ipk = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dev = std::abs(y[i] - baseline);
        if (dev > best) {
            best = dev;
            ipk = i;
        }
    }
    const double height = y[ipk] - baseline;
    const double half = baseline + 0.5 * height;

    // Walk outwards to the half-maximum crossings.
    double left = x.front(), right = x.back();
    const bool up = height > 0;
    for (std::size_t i = ipk; i-- > 0;) {
        if (up ? (y[i] < half) : (y[i] > half)) {
            left = x[i];
            break;
        }
    }
    for (std::size_t i = ipk + 1; i < y.size(); ++i) {
        if (up ? (y[i] < half) : (y[i] > half)) {
            right = x[i];
            break;
        }
    }
    double fwhm = std::abs(right - left);
    if (fwhm == 0.0) fwhm = std::abs(x.back() - x.front()) / 10.0;
    return {x[ipk], fwhm, height, baseline};
}

void span_warnings(const std::vector<double>& x, double fwhm,
                   std::vector<std::string>* warnings) {
    if (!warnings) return;
    if (x.size() < 5) warnings->push_back("fit: fewer than 5 points");
    if (std::abs(x.back() - x.front()) < 2.0 * fwhm)
        warnings->push_back("fit: span below two linewidths");
}

}  // namespace

LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                             std::optional<std::array<double, 4>> init,
                             std::vector<std::string>* warnings) {
    check_xy(x, y);
    Eigen::VectorXd p0(4);
    if (init) {
        p0 << (*init)[0], (*init)[1], (*init)[2], (*init)[3];
    } else {
        const PeakGuess g = guess_peak(x, y);
        p0 << g.center, g.fwhm, g.height * M_PI * g.fwhm / 2.0, g.offset;
    }
    span_warnings(x, p0(1), warnings);

    auto residual = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            r(i) = lorentzian_model(x[i], p(0), p(1), p(2), p(3)) - y[i];
        return r;
    };
    LevMarResult res = levmar(residual, p0);
    if (!res.converged) throw std::runtime_error("fit_lorentzian: did not converge");

    LorentzianFit out;
    out.center = res.params(0);
    // (fwhm, area) -> (-fwhm, -area) leaves the model invariant; normalize.
    const double sign = res.params(1) < 0 ? -1.0 : 1.0;
    out.fwhm = sign * res.params(1);
    out.area = sign * res.params(2);
    out.offset = res.params(3);
    for (int k = 0; k < 4; ++k) out.sigma[k] = std::sqrt(std::max(0.0, res.covariance(k, k)));
    out.residual_rms = res.residual_rms;
    out.iterations = res.iterations;
    out.converged = res.converged;
    return out;
}

FanoFit fit_fano(const std::vector<double>& x, const std::vector<double>& y,
                 std::optional<std::array<double, 5>> init,
                 std::vector<std::string>* warnings) {
    check_xy(x, y);
    Eigen::VectorXd p0(5);
    if (init) {
        p0 << (*init)[0], (*init)[1], (*init)[2], (*init)[3], (*init)[4];
    } else {
        // For fixed (center, fwhm, q) the model is linear in (amplitude,
        // offset); scan a deterministic q ladder and keep the best seed.
        const PeakGuess g = guess_peak(x, y);
        const double qs[] = {-10.0, -5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0, 10.0};
        double best_cost = std::numeric_limits<double>::infinity();
        double best_q = 1.0, best_amp = g.height, best_off = g.offset;
        for (double q : qs) {
            // Linear least squares over (amplitude, offset).
            double s_ff = 0, s_f1 = 0, s_11 = 0, s_fy = 0, s_1y = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double f = fano_model(x[i], g.center, g.fwhm, 1.0, 0.0, q);
                s_ff += f * f;
                s_f1 += f;
                s_11 += 1.0;
                s_fy += f * y[i];
                s_1y += y[i];
            }
            const double det = s_ff * s_11 - s_f1 * s_f1;
            if (std::abs(det) < 1e-300) continue;
            const double amp = (s_fy * s_11 - s_f1 * s_1y) / det;
            const double off = (s_ff * s_1y - s_f1 * s_fy) / det;
            double cost = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = fano_model(x[i], g.center, g.fwhm, amp, off, q) - y[i];
                cost += d * d;
            }
            if (cost < best_cost) {
                best_cost = cost;
                best_q = q;
                best_amp = amp;
                best_off = off;
            }
        }
        p0 << g.center, g.fwhm, best_amp, best_off, best_q;
    }
    span_warnings(x, p0(1), warnings);

    auto residual = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            r(i) = fano_model(x[i], p(0), p(1), p(2), p(3), p(4)) - y[i];
        return r;
    };
    LevMarResult res = levmar(residual, p0);
    if (!res.converged) throw std::runtime_error("fit_fano: did not converge");

    FanoFit out;
    out.center = res.params(0);
    // (fwhm, q) -> (-fwhm, -q) leaves the model invariant; normalize.
    const double sign = res.params(1) < 0 ? -1.0 : 1.0;
    out.fwhm = sign * res.params(1);
    out.amplitude = res.params(2);
    out.offset = res.params(3);
    out.q = sign * res.params(4);
    for (int k = 0; k < 5; ++k) out.sigma[k] = std::sqrt(std::max(0.0, res.covariance(k, k)));
    out.residual_rms = res.residual_rms;
    out.iterations = res.iterations;
    out.converged = res.converged;
    return out;
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_linear: x/y size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("fit_linear: need at least 2 points");

    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_linear: all x identical");

    LinearFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y[i] - (out.slope * x[i] + out.intercept);
        rss += d * d;
    }
    out.residual_rms = std::sqrt(rss / double(n));
    out.r_squared = (syy > 0) ? std::max(0.0, 1.0 - rss / syy) : 1.0;
    if (n > 2) {
        const double sigma2 = rss / double(n - 2);
        out.slope_sigma = std::sqrt(sigma2 / sxx);
        out.intercept_sigma = std::sqrt(sigma2 * (1.0 / double(n) + mx * mx / sxx));
    }
    return out;
}

namespace {

ReflectionFit reflection_fit_impl(const std::vector<double>& freq_hz, const ResidualFn& residual,
                                  const Eigen::VectorXd& p0, bool magnitude_only) {
    LevMarResult res = levmar(residual, p0);
    if (!res.converged) throw std::runtime_error("reflection_linewidths: did not converge");

    ReflectionFit out;
    out.omega0_hz = res.params(0);
    out.total_hz = std::abs(res.params(1));
    out.external_hz = std::abs(res.params(2));
    out.scale = res.params(3);
    out.residual_rms = res.residual_rms;
    out.converged = true;
    if (magnitude_only) {
        // |S11|^2 is invariant under gamma_ex -> gamma - gamma_ex.
        out.coupling_ambiguous = true;
        if (out.external_hz > 0.5 * out.total_hz)
            out.external_hz = out.total_hz - out.external_hz;
    }
    return out;
}

Eigen::VectorXd reflection_guess(const std::vector<double>& freq_hz,
                                 const std::vector<double>& mag_sq) {
    PeakGuess g = guess_peak(freq_hz, mag_sq);
    // Reflection dip: depth 1 - |S11|^2_min = 4 eta (1 - eta).
    const double depth = std::min(std::abs(g.height) / std::max(g.offset, 1e-30), 1.0);
    const double eta = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - depth)));
    Eigen::VectorXd p0(4);
    p0 << g.center, g.fwhm, std::max(eta, 0.02) * g.fwhm, g.offset;
    return p0;
}

}  // namespace

ReflectionFit reflection_linewidths(const std::vector<double>& freq_hz,
                                    const std::vector<std::complex<double>>& s11) {
    if (freq_hz.size() != s11.size())
        throw std::invalid_argument("reflection_linewidths: size mismatch");
    if (freq_hz.size() < 5)
        throw std::invalid_argument("reflection_linewidths: too few points");

    std::vector<double> mag_sq(s11.size());
    for (std::size_t i = 0; i < s11.size(); ++i) mag_sq[i] = std::norm(s11[i]);
    const Eigen::VectorXd p0 = reflection_guess(freq_hz, mag_sq);

    auto residual = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(2 * freq_hz.size());
        for (std::size_t i = 0; i < freq_hz.size(); ++i) {
            const std::complex<double> m =
                std::sqrt(std::abs(p(3))) * reflection_model(freq_hz[i], p(0), p(1), p(2));
            r(2 * i) = m.real() - s11[i].real();
            r(2 * i + 1) = m.imag() - s11[i].imag();
        }
        return r;
    };
    return reflection_fit_impl(freq_hz, residual, p0, false);
}

ReflectionFit reflection_linewidths(const std::vector<double>& freq_hz,
                                    const std::vector<double>& s11_mag_sq) {
    if (freq_hz.size() != s11_mag_sq.size())
        throw std::invalid_argument("reflection_linewidths: size mismatch");
    if (freq_hz.size() < 5)
        throw std::invalid_argument("reflection_linewidths: too few points");
    const Eigen::VectorXd p0 = reflection_guess(freq_hz, s11_mag_sq);

    auto residual = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(freq_hz.size());
        for (std::size_t i = 0; i < freq_hz.size(); ++i) {
            const double m =
                std::abs(p(3)) * std::norm(reflection_model(freq_hz[i], p(0), p(1), p(2)));
            r(i) = m - s11_mag_sq[i];
        }
        return r;
    };
    return reflection_fit_impl(freq_hz, residual, p0, true);
}

// ---- JSON ----

namespace {
nlohmann::json param(const std::string& name, double value, double sigma) {
    return {{"parameter", name}, {"value", value}, {"sigma", sigma}};
}
}  // namespace

std::string LorentzianFit::to_json() const {
    nlohmann::json j;
    j["model"] = "lorentzian";
    j["parameters"] = {param("center", center, sigma[0]), param("fwhm", fwhm, sigma[1]),
                       param("area", area, sigma[2]), param("offset", offset, sigma[3])};
    j["residual_rms"] = residual_rms;
    j["iterations"] = iterations;
    j["converged"] = converged;
    return j.dump(2);
}

std::string FanoFit::to_json() const {
    nlohmann::json j;
    j["model"] = "fano";
    j["parameters"] = {param("center", center, sigma[0]), param("fwhm", fwhm, sigma[1]),
                       param("amplitude", amplitude, sigma[2]),
                       param("offset", offset, sigma[3]), param("q", q, sigma[4])};
    j["residual_rms"] = residual_rms;
    j["iterations"] = iterations;
    j["converged"] = converged;
    return j.dump(2);
}

std::string LinearFit::to_json() const {
    nlohmann::json j;
    j["model"] = "linear";
    j["parameters"] = {param("slope", slope, slope_sigma),
                       param("intercept", intercept, intercept_sigma)};
    j["r_squared"] = r_squared;
    j["residual_rms"] = residual_rms;
    return j.dump(2);
}

std::string ReflectionFit::to_json() const {
    nlohmann::json j;
    j["model"] = "reflection";
    j["parameters"] = {param("omega0", omega0_hz, 0.0), param("total", total_hz, 0.0),
                       param("external", external_hz, 0.0), param("scale", scale, 0.0)};
    j["coupling_ambiguous"] = coupling_ambiguous;
    j["residual_rms"] = residual_rms;
    j["converged"] = converged;
    return j.dump(2);
}

}  // namespace fit
}  // namespace sawmw
