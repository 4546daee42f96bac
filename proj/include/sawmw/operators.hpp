#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sawmw/hilbert.hpp"

namespace sawmw {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Bosonic annihilation operator on a ladder truncated to n Fock states,
/// <m-1|a|m> = sqrt(m). Rejects n < 2.
CMatrix annihilator(int n);

/// Number operator a^dag a on the truncated ladder.
CMatrix number_operator(int n);

/// Transmon projector |k><l| on an n_qubit-level ladder (0 = g, 1 = e, 2 = f).
CMatrix transmon_projector(int k, int l, int n_qubit);

/// Kronecker embedding of a single-subsystem operator into the composite
/// space, identities on the other two factors.
CMatrix embed(const CMatrix& op, Subsystem where, const HilbertConfig& cfg);

CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double rel_tol = 1e-12);

}  // namespace sawmw
