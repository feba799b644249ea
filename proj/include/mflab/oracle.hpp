// Brute-force reference implementations on the full d^n tensor space.
// Everything here is exponential in n and exists only to cross-check the
// sector-basis code; keep n small.
#ifndef MFLAB_ORACLE_HPP
#define MFLAB_ORACLE_HPP

#include "mflab/symspace.hpp"

namespace mflab::oracle {

/// d^n x dim(n,d) isometry whose columns are the occupation states written
/// out in the full tensor-product basis.
Matrix embedding(int n, int d);

/// Orthogonal projector onto the symmetric subspace of (C^d)^(x)n.
Matrix symmetrizer(int n, int d);

Matrix kron_power(const Matrix& u, int n);

/// sum_k 1 x .. x h x .. x 1 on the full tensor space.
Matrix full_one_body(const Matrix& h, int n);

/// sum_{i<j} V_ij on the full tensor space; v2 is d^2 x d^2.
Matrix full_pair_sum(const Matrix& v2, int n, int d);

/// Trace out the last n-p tensor factors of a d^n x d^n matrix.
Matrix full_partial_trace(const Matrix& rho_full, int n, int d, int p);

/// Lift a sector operator (or state) to the full tensor space.
Matrix lift_operator(const SectorOperator& a);
Vector lift_state(const Vector& amplitudes, int n, int d);

}  // namespace mflab::oracle

#endif  // MFLAB_ORACLE_HPP
