#include "sawmw/liouvillian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace sawmw {

Liouvillian::Liouvillian(CMatrix h, std::vector<Collapse> collapses)
    : h_(std::move(h)), collapses_(std::move(collapses)) {
    cdagc_.reserve(collapses_.size());
    for (const auto& c : collapses_) cdagc_.push_back(c.op.adjoint() * c.op);
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
    const Complex i_unit(0.0, 1.0);
    CMatrix out = -i_unit * (h_ * rho - rho * h_);
    for (std::size_t k = 0; k < collapses_.size(); ++k) {
        const auto& c = collapses_[k];
        if (c.rate == 0.0) continue;
        out.noalias() += c.rate * (c.op * rho) * c.op.adjoint();
        out.noalias() -= (0.5 * c.rate) * (cdagc_[k] * rho);
        out.noalias() -= (0.5 * c.rate) * (rho * cdagc_[k]);
    }
    return out;
}

namespace {

// out += coeff * kron(a, b), accumulated block-wise; zero entries of `a` are
// skipped, which matters at dim^2 x dim^2 sizes.
void add_kron(CMatrix& out, Complex coeff, const CMatrix& a, const CMatrix& b) {
    const Eigen::Index br = b.rows(), bc = b.cols();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const Complex w = coeff * a(i, j);
            if (w == Complex(0.0, 0.0)) continue;
            out.block(i * br, j * bc, br, bc) += w * b;
        }
    }
}

}  // namespace

CMatrix Liouvillian::superoperator() const {
    const int d = dim();
    const CMatrix id = CMatrix::Identity(d, d);
    const Complex i_unit(0.0, 1.0);
    // Column stacking: (I (x) A) vec(rho) = vec(A rho),
    //                  (B^T (x) I) vec(rho) = vec(rho B).
    CMatrix sup = CMatrix::Zero(d * d, d * d);
    add_kron(sup, -i_unit, id, h_);
    add_kron(sup, i_unit, h_.transpose(), id);
    for (std::size_t k = 0; k < collapses_.size(); ++k) {
        const auto& c = collapses_[k];
        if (c.rate == 0.0) continue;
        add_kron(sup, c.rate, c.op.conjugate(), c.op);
        add_kron(sup, -0.5 * c.rate, id, cdagc_[k]);
        add_kron(sup, -0.5 * c.rate, cdagc_[k].transpose(), id);
    }
    return sup;
}

double Liouvillian::spectral_radius_bound() const {
    // ||L rho|| <= (2 ||H||_2 + 2 sum_k r_k ||C_k||_2^2) ||rho||.
    double bound = 0.0;
    if (h_.size() > 0) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h_, Eigen::EigenvaluesOnly);
        bound += 2.0 * es.eigenvalues().cwiseAbs().maxCoeff();
    }
    for (std::size_t k = 0; k < collapses_.size(); ++k) {
        if (collapses_[k].rate == 0.0) continue;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(cdagc_[k], Eigen::EigenvaluesOnly);
        bound += 2.0 * collapses_[k].rate * es.eigenvalues().maxCoeff();
    }
    return bound;
}

double Liouvillian::spectral_radius_estimate() const {
    const int d = dim();
    CMatrix x(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            x(i, j) = Complex(1.0 + 0.37 * ((i * 31 + j * 17) % 7),
                              0.29 * ((i * 13 + j * 5) % 5));
    double norm = x.norm();
    if (norm == 0.0) return 0.0;
    x /= norm;
    double lambda = 0.0;
    for (int it = 0; it < 40; ++it) {
        x = apply(x);
        norm = x.norm();
        if (norm == 0.0) return 0.0;
        lambda = norm;
        x /= norm;
    }
    return std::min(1.15 * lambda, spectral_radius_bound());
}

Liouvillian lindblad(const CMatrix& h, const std::vector<Collapse>& collapses) {
    if (h.rows() != h.cols()) throw std::invalid_argument("lindblad: H not square");
    if (!is_hermitian(h)) throw std::invalid_argument("lindblad: H not Hermitian");
    for (const auto& c : collapses) {
        if (c.rate < 0.0) throw std::invalid_argument("lindblad: negative collapse rate");
        if (c.op.rows() != h.rows() || c.op.cols() != h.cols())
            throw std::invalid_argument("lindblad: collapse dimension mismatch");
    }
    return Liouvillian(h, collapses);
}

}  // namespace sawmw
