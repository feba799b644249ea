#include "mflab/hartree.hpp"

#include <cmath>

namespace mflab {

void WignerMeasureSpec::validate() const {
  if (d < 1) throw std::invalid_argument("measure needs d >= 1");
  double total = 0.0;
  for (const auto& atom : atoms) {
    if (atom.weight < -1e-14)
      throw std::invalid_argument("measure weights must be nonnegative");
    total += atom.weight;
    if (atom.generators.empty() || atom.generators.size() > 2)
      throw std::invalid_argument("atoms carry one or two generators");
    if (atom.generators.size() != atom.amplitudes.size())
      throw std::invalid_argument("one amplitude per generator");
    double norm2 = 0.0;
    for (size_t i = 0; i < atom.generators.size(); ++i) {
      if (static_cast<int>(atom.generators[i].size()) != d)
        throw std::invalid_argument("generator has wrong dimension");
      for (size_t j = 0; j < i; ++j)
        if (std::abs(atom.generators[j].dot(atom.generators[i])) > 1e-10)
          throw std::invalid_argument("generators must be orthogonal");
      if (std::abs(atom.generators[i].norm() - 1.0) > 1e-10)
        throw std::invalid_argument("generators must be unit vectors");
      norm2 += std::norm(atom.amplitudes[i]);
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw std::invalid_argument("atom amplitudes must have unit square sum");
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("measure weights must sum to 1");
}

Vector interaction_gradient(const Vector& z, const ModelSpec& model) {
  if (static_cast<int>(z.size()) != model.d)
    throw std::invalid_argument("state has wrong dimension");
  const auto& two = OccupationBasis::get(2, model.d);
  Vector pair = model.pair_kernel.m * power_amplitudes(z, 2);
  // contract the second slot of the symmetric pair state against zbar
  Vector grad = Vector::Zero(model.d);
  const double invrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < two.dim(); ++i) {
    if (pair[i] == Complex(0)) continue;
    const Occupation& nu = two.state(i);
    int a = -1, b = -1;
    for (int j = 0; j < model.d; ++j) {
      if (nu[j] == 2) a = b = j;
      if (nu[j] == 1) (a < 0 ? a : b) = j;
    }
    if (a == b) {
      grad[a] += pair[i] * std::conj(z[a]);
    } else {
      grad[a] += pair[i] * std::conj(z[b]) * invrt2;
      grad[b] += pair[i] * std::conj(z[a]) * invrt2;
    }
  }
  return 2.0 * grad;
}

Vector hartree_vector_field(const Vector& z, const ModelSpec& model) {
  return Complex(0.0, -1.0) * (model.h0 * z + interaction_gradient(z, model));
}

Vector hartree_flow(const Vector& z0, double t, const FlowConfig& cfg,
                    const ModelSpec& model) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("flow step must be > 0");
  if (z0.norm() > 1.0 + 1e-9)
    throw std::invalid_argument("flow expects states in the unit ball");
  double remaining = std::abs(t);
  double direction = (t >= 0.0) ? 1.0 : -1.0;
  Vector z = z0;
  while (remaining > 0.0) {
    double h = direction * std::min(cfg.dt, remaining);
    Vector k1 = hartree_vector_field(z, model);
    Vector k2 = hartree_vector_field(z + 0.5 * h * k1, model);
    Vector k3 = hartree_vector_field(z + 0.5 * h * k2, model);
    Vector k4 = hartree_vector_field(z + h * k3, model);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    remaining -= std::abs(h);
  }
  if (!z.allFinite()) throw NumericError("mean-field flow diverged");
  return z;
}

std::vector<QuadratureNode> quadrature_nodes(const WignerMeasureSpec& mu,
                                             int p, int K) {
  mu.validate();
  if (p < 0) throw std::invalid_argument("p must be >= 0");
  if (K < 2 * p + 2)
    throw std::invalid_argument("quadrature needs K >= 2p+2 nodes");
  std::vector<QuadratureNode> nodes;
  for (const auto& atom : mu.atoms) {
    if (atom.weight == 0.0) continue;
    if (atom.generators.size() == 1) {
      // The overall phase circle is invisible to |z^p><z^p|: one node.
      nodes.push_back(
          QuadratureNode{atom.weight, atom.amplitudes[0] * atom.generators[0]});
    } else {
      // Trapezoid rule on the relative phase; equispaced nodes have equal
      // weights and integrate trig polynomials of degree < K exactly.
      for (int j = 0; j < K; ++j) {
        double theta = 2.0 * M_PI * j / K;
        Vector z = atom.amplitudes[0] * atom.generators[0] +
                   std::exp(Complex(0.0, theta)) * atom.amplitudes[1] *
                       atom.generators[1];
        nodes.push_back(QuadratureNode{atom.weight / K, z});
      }
    }
  }
  return nodes;
}

DensityMatrix limit_rdm(const WignerMeasureSpec& mu, int p, double t, int K,
                        const FlowConfig& cfg, const ModelSpec& model) {
  if (mu.d != model.d)
    throw std::invalid_argument("measure and model mode counts differ");
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  auto nodes = quadrature_nodes(mu, p, K);
  int dim = OccupationBasis::get(p, model.d).dim();
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& node : nodes) {
    Vector y = (t == 0.0) ? node.point
                          : hartree_flow(node.point, t, cfg, model);
    Vector amp = power_amplitudes(y, p);
    acc.noalias() += node.weight * (amp * amp.adjoint());
  }
  return DensityMatrix::from(SectorOperator{p, model.d, std::move(acc)});
}

}  // namespace mflab
