// Model data shared by the classical and quantum sides: one-particle part
// h0 and the Hermitian pair kernel on the two-particle sector.
#ifndef MFLAB_MODEL_HPP
#define MFLAB_MODEL_HPP

#include "mflab/symspace.hpp"

namespace mflab {

struct ModelSpec {
  int d = 0;
  Matrix h0;                  // d x d, Hermitian
  SectorOperator pair_kernel; // on the 2-particle sector, Hermitian
  double qnorm = 0.0;         // operator norm of pair_kernel, cached

  static ModelSpec make(Matrix h0, SectorOperator pair_kernel);
};

/// Pair kernel (g/2) * projector onto the double-occupation states, i.e. an
/// on-site interaction of strength g per same-mode pair.
SectorOperator onsite_pair_kernel(int d, double g);

/// Two-mode hopping model with on-site interaction g (the default lab model).
ModelSpec dimer_model(double g = 1.0);

/// e^{i t h0} (h0 Hermitian).
Matrix one_body_phase(const Matrix& h0, double t);

}  // namespace mflab

#endif  // MFLAB_MODEL_HPP
