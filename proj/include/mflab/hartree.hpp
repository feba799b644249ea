// Mean-field side: the nonlinear one-particle flow, finitely supported
// phase-circle measures, quadrature over their relative phases, and the
// limiting p-particle reduced density matrices.
#ifndef MFLAB_HARTREE_HPP
#define MFLAB_HARTREE_HPP

#include <vector>

#include "mflab/model.hpp"

namespace mflab {

// One atom of a phase-invariant measure: with one generator this is a uniform
// phase circle through a1*v1; with two generators the set
// {e^{i s}(a1 v1 + e^{i theta} a2 v2)}, i.e. a torus whose observable content
// is the relative-phase circle. Generators are orthonormal and
// sum_j |a_j|^2 = 1, so every sampled point is a unit vector.
struct MeasureAtom {
  double weight = 0.0;
  std::vector<Vector> generators;
  std::vector<Complex> amplitudes;
};

struct WignerMeasureSpec {
  int d = 0;
  std::vector<MeasureAtom> atoms;

  void validate() const;  // weights sum to 1, generators orthonormal
};

struct FlowConfig {
  double dt = 1e-3;  // fixed RK4 step
};

/// Gradient part of the flow: the vector with <u, grad(z)> equal to twice the
/// single-slot contraction of K(z x z) against z, K the model pair kernel.
Vector interaction_gradient(const Vector& z, const ModelSpec& model);

/// Right-hand side -i (h0 z + grad(z)) of the mean-field equation.
Vector hartree_vector_field(const Vector& z, const ModelSpec& model);

/// Fixed-step RK4 integration of the mean-field equation from 0 to t
/// (negative t integrates backwards). Throws NumericError on non-finite
/// values.
Vector hartree_flow(const Vector& z0, double t, const FlowConfig& cfg,
                    const ModelSpec& model);

struct QuadratureNode {
  double weight = 0.0;
  Vector point;
};

// Relative-phase quadrature for a measure: one node per single-generator
// atom, K equispaced nodes per two-generator atom. Exact for p-homogeneous
// projectors when K >= 2p+2 (hence the precondition).
std::vector<QuadratureNode> quadrature_nodes(const WignerMeasureSpec& mu,
                                             int p, int K);

/// Flow the quadrature nodes to time t and average |y^(x)p><y^(x)p|.
DensityMatrix limit_rdm(const WignerMeasureSpec& mu, int p, double t, int K,
                        const FlowConfig& cfg, const ModelSpec& model);

}  // namespace mflab

#endif  // MFLAB_HARTREE_HPP
