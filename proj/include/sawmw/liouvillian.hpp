#pragma once

#include <utility>
#include <vector>

#include "sawmw/density.hpp"
#include "sawmw/operators.hpp"

namespace sawmw {

/// Collapse channel: dissipator D[sqrt(rate) * op]. Rates are angular (rad/s).
struct Collapse {
    CMatrix op;
    double rate = 0.0;  // rad/s
};

// Lindblad generator kept in operator form (Hamiltonian + collapse list);
// the flattened dim^2 x dim^2 superoperator is materialized on demand since
// only the linear-algebra solvers need it.
class Liouvillian {
  public:
    Liouvillian() = default;
    Liouvillian(CMatrix h, std::vector<Collapse> collapses);

    int dim() const { return int(h_.rows()); }
    const CMatrix& hamiltonian() const { return h_; }
    const std::vector<Collapse>& collapses() const { return collapses_; }

    /// d(rho)/dt = -i[H, rho] + sum_k r_k (C rho C^dag - {C^dag C, rho}/2).
    CMatrix apply(const CMatrix& rho) const;

    /// Column-stacked dense superoperator, dim^2 x dim^2.
    CMatrix superoperator() const;

    /// Upper bound on the spectral radius (operator norms), used to gate
    /// explicit integration step sizes.
    double spectral_radius_bound() const;

    /// Power-iteration estimate of the spectral radius (with a safety
    /// margin); tighter than the norm bound, used to pick steps.
    double spectral_radius_estimate() const;

  private:
    CMatrix h_;
    std::vector<Collapse> collapses_;
    std::vector<CMatrix> cdagc_;  // precomputed C^dag C per channel
};

/// Builds the Lindblad generator. h must be Hermitian (1e-12 relative),
/// rates must be nonnegative; both are enforced.
Liouvillian lindblad(const CMatrix& h, const std::vector<Collapse>& collapses);

}  // namespace sawmw
