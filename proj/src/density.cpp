#include "sawmw/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace sawmw {

void DensityState::validate(double trace_tol, double herm_tol, double eig_floor) const {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("DensityState: not square");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol ||
        std::abs(rho.trace().imag()) > trace_tol)
        throw std::invalid_argument("DensityState: trace deviates from 1");
    const double scale = std::max(rho.norm(), 1.0);
    if ((rho - rho.adjoint()).norm() > herm_tol * scale)
        throw std::invalid_argument("DensityState: not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()),
                                              Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor)
        throw std::invalid_argument("DensityState: negative eigenvalue beyond tolerance");
}

DensityState fock_state(int n, int dim) {
    if (n < 0 || n >= dim) throw std::invalid_argument("fock_state: level out of range");
    DensityState s;
    s.rho = CMatrix::Zero(dim, dim);
    s.rho(n, n) = 1.0;
    return s;
}

DensityState thermal_state(double n_bar, int dim) {
    if (n_bar < 0) throw std::invalid_argument("thermal_state: n_bar must be >= 0");
    DensityState s;
    s.rho = CMatrix::Zero(dim, dim);
    if (n_bar == 0.0) {
        s.rho(0, 0) = 1.0;
        return s;
    }
    const double r = n_bar / (1.0 + n_bar);
    double norm = 0.0;
    for (int n = 0; n < dim; ++n) norm += std::pow(r, n);
    for (int n = 0; n < dim; ++n) s.rho(n, n) = std::pow(r, n) / norm;
    return s;
}

double trace_distance(const DensityState& a, const DensityState& b) {
    CMatrix d = 0.5 * (a.rho - b.rho);
    d = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace sawmw
