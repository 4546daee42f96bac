#include "sawmw/solvers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sawmw {

DensityState steady_state(const Liouvillian& lv) {
    const int d = lv.dim();
    const int d2 = d * d;

    CMatrix sys = lv.superoperator();
    const double scale = sys.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        throw std::invalid_argument("steady_state: zero generator has no unique steady state");

    // Replace the first row by the trace condition; the normalization keeps
    // the row on the same footing as the generator rows.
    sys.row(0).setZero();
    for (int i = 0; i < d; ++i) sys(0, i * d + i) = scale;
    CVector rhs = CVector::Zero(d2);
    rhs(0) = scale;

    // In-place LU: the superoperator can be large (dim^2 squared entries).
    Eigen::PartialPivLU<Eigen::Ref<CMatrix>> lu(sys);
    // Degeneracy check via the pivot spread; a second null vector collapses
    // the smallest pivot to roundoff.
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs().eval();
    const double pivot_ratio = pivots.minCoeff() / pivots.maxCoeff();
    if (!(pivot_ratio > 1e-12)) {
        std::ostringstream msg;
        msg << "steady_state: degenerate null space or ill-conditioned system "
            << "(pivot condition estimate " << pivot_ratio << ")";
        throw std::runtime_error(msg.str());
    }
    const CVector x = lu.solve(rhs);
    if (!x.allFinite())
        throw std::runtime_error("steady_state: singular system (degenerate null space)");

    DensityState out;
    out.rho = Eigen::Map<const CMatrix>(x.data(), d, d);
    out.rho = 0.5 * (out.rho + out.rho.adjoint().eval());

    // Residual check stands in for a condition estimate: a near-degenerate
    // null space shows up as a large ||L rho|| after normalization.
    const double resid = lv.apply(out.rho).norm() / scale;
    if (resid > 1e-8) {
        std::ostringstream msg;
        msg << "steady_state: null space degenerate or ill-conditioned "
            << "(normalized residual " << resid << ")";
        throw std::runtime_error(msg.str());
    }
    if (std::abs(out.trace() - 1.0) > 1e-9)
        throw std::runtime_error("steady_state: trace normalization failed");
    return out;
}

DensityState evolve(const DensityState& rho0, const Liouvillian& lv, double t, double dt) {
    if (t < 0 || dt <= 0) throw std::invalid_argument("evolve: bad time arguments");
    if (rho0.rho.rows() != lv.dim())
        throw std::invalid_argument("evolve: state/generator dimension mismatch");
    if (dt * lv.spectral_radius_bound() >= 0.1)
        throw std::invalid_argument("evolve: step size violates dt * spectral_radius < 0.1");

    CMatrix rho = rho0.rho;
    const long nsteps = std::lround(std::ceil(t / dt));
    double remaining = t;
    for (long s = 0; s < nsteps; ++s) {
        const double h = std::min(dt, remaining);
        const CMatrix k1 = lv.apply(rho);
        const CMatrix k2 = lv.apply(rho + (0.5 * h) * k1);
        const CMatrix k3 = lv.apply(rho + (0.5 * h) * k2);
        const CMatrix k4 = lv.apply(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        remaining -= h;
    }
    DensityState out;
    out.rho = std::move(rho);
    return out;
}

}  // namespace sawmw
