#include "sawmw/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace sawmw {

CMatrix annihilator(int n) {
    if (n < 2) throw std::invalid_argument("annihilator: truncation must be >= 2");
    CMatrix a = CMatrix::Zero(n, n);
    for (int m = 1; m < n; ++m) a(m - 1, m) = std::sqrt(double(m));
    return a;
}

CMatrix number_operator(int n) {
    if (n < 2) throw std::invalid_argument("number_operator: truncation must be >= 2");
    CMatrix num = CMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) num(m, m) = double(m);
    return num;
}

CMatrix transmon_projector(int k, int l, int n_qubit) {
    if (k < 0 || l < 0 || k >= n_qubit || l >= n_qubit)
        throw std::invalid_argument("transmon_projector: level index out of range");
    CMatrix p = CMatrix::Zero(n_qubit, n_qubit);
    p(k, l) = 1.0;
    return p;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix embed(const CMatrix& op, Subsystem where, const HilbertConfig& cfg) {
    cfg.validate();
    const int d = cfg.subsystem_dim(where);
    if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("embed: operator dimension does not match subsystem");
    const CMatrix id_mw = CMatrix::Identity(cfg.n_mw, cfg.n_mw);
    const CMatrix id_q = CMatrix::Identity(cfg.n_qubit, cfg.n_qubit);
    const CMatrix id_s = CMatrix::Identity(cfg.n_saw, cfg.n_saw);
    switch (where) {
        case Subsystem::mw: return kron(op, kron(id_q, id_s));
        case Subsystem::qubit: return kron(id_mw, kron(op, id_s));
        case Subsystem::saw: return kron(id_mw, kron(id_q, op));
    }
    throw std::logic_error("embed: bad subsystem");
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = m.norm();
    if (scale == 0.0) return true;
    return (m - m.adjoint()).norm() <= rel_tol * scale;
}

}  // namespace sawmw
