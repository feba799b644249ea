// Quantum side: sector Hamiltonians, unitary conjugation via cached
// eigendecompositions, the interaction frame, and the prepared state
// families paired with their limiting measures.
#ifndef MFLAB_QUANTUM_HPP
#define MFLAB_QUANTUM_HPP

#include <string>

#include "mflab/hartree.hpp"

namespace mflab {

/// H_n = embed_one_body(h0, n, 1) + embed_pair(pair_kernel, n, 1/n).
SectorOperator build_hamiltonian(const ModelSpec& model, int n);

// Conjugation by e^{i t H}; the eigendecomposition is done once at
// construction, so one Propagator serves every time point of a sweep.
class Propagator {
 public:
  explicit Propagator(const SectorOperator& h);

  /// e^{+i t H} rho e^{-i t H}.
  DensityMatrix evolve(const DensityMatrix& rho, double t) const;
  Matrix phase(double t) const;  // e^{+i t H}

 private:
  int n_ = 0, d_ = 0;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

DensityMatrix evolve(const DensityMatrix& rho, const SectorOperator& h,
                     double t);

/// Interaction frame: conjugation by e^{+i t embed_one_body(h0, n, 1)}.
DensityMatrix free_frame(const DensityMatrix& rho_t, int n, double t,
                         const ModelSpec& model);

// A many-body state together with the measure describing its mean-field
// limit. States are assembled on an adapted basis (generators as the leading
// modes) and rotated into place with sym_power_unitary.
struct PreparedState {
  std::string family;
  int n = 0;
  DensityMatrix rho;
  WignerMeasureSpec mu;
};

PreparedState product_state(const Vector& phi, int n);
PreparedState w_state(const Vector& phi, const Vector& psi, int n);
PreparedState ghz_state(const Vector& phi, const Vector& psi, int n);
PreparedState twin_state(const Vector& phi1, const Vector& phi2, int n);
PreparedState mixture_state(const Vector& e1, const Vector& e2, double alpha,
                            int n);

}  // namespace mflab

#endif  // MFLAB_QUANTUM_HPP
