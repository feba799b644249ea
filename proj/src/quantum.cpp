#include "mflab/quantum.hpp"

#include <cmath>

namespace mflab {

namespace {

// Complete a set of orthonormal vectors to a unitary, keeping the given
// vectors verbatim as the leading columns.
Matrix complete_unitary(const std::vector<Vector>& generators, int d) {
  std::vector<Vector> cols = generators;
  for (int i = 0; i < d && static_cast<int>(cols.size()) < d; ++i) {
    Vector v = Vector::Zero(d);
    v[i] = 1.0;
    for (const auto& c : cols) v -= c * c.dot(v);
    double norm = v.norm();
    if (norm > 0.5) cols.push_back(v / norm);
  }
  if (static_cast<int>(cols.size()) != d)
    throw NumericError("failed to complete the adapted basis");
  Matrix u(d, d);
  for (int j = 0; j < d; ++j) u.col(j) = cols[j];
  return u;
}

void check_generators(const std::vector<Vector>& gens, int n) {
  if (n < 1) throw std::invalid_argument("particle count must be >= 1");
  int d = static_cast<int>(gens.front().size());
  if (d < static_cast<int>(gens.size()))
    throw std::invalid_argument("more generators than modes");
  for (size_t i = 0; i < gens.size(); ++i) {
    if (static_cast<int>(gens[i].size()) != d)
      throw std::invalid_argument("generators have mismatched dimensions");
    if (std::abs(gens[i].norm() - 1.0) > 1e-10)
      throw std::invalid_argument("generators must be unit vectors");
    for (size_t j = 0; j < i; ++j)
      if (std::abs(gens[j].dot(gens[i])) > 1e-10)
        throw std::invalid_argument("generators must be orthogonal");
  }
}

// Rotate an occupation-basis density matrix from the adapted basis into the
// standard one.
DensityMatrix rotate_state(const Matrix& rho_adapted,
                           const std::vector<Vector>& gens, int n) {
  int d = static_cast<int>(gens.front().size());
  Matrix u = complete_unitary(gens, d);
  Matrix gamma = sym_power_unitary(u, n).m;
  return DensityMatrix::from(
      SectorOperator{n, d, gamma * rho_adapted * gamma.adjoint()});
}

Matrix adapted_pure(const Occupation& nu, int n, int d) {
  const auto& basis = OccupationBasis::get(n, d);
  Vector v = Vector::Zero(basis.dim());
  v[basis.index(nu)] = 1.0;
  return v * v.adjoint();
}

MeasureAtom circle_atom(double weight, const Vector& v) {
  return MeasureAtom{weight, {v}, {Complex(1.0)}};
}

}  // namespace

SectorOperator build_hamiltonian(const ModelSpec& model, int n) {
  if (n < 1) throw std::invalid_argument("particle count must be >= 1");
  SectorOperator h = embed_one_body(model.h0, n, 1.0);
  h.m += embed_pair(model.pair_kernel, n, 1.0 / n).m;
  return h;
}

Propagator::Propagator(const SectorOperator& h) : n_(h.n), d_(h.d) {
  if (!is_hermitian(h.m))
    throw std::invalid_argument("propagator needs a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.m);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

Matrix Propagator::phase(double t) const {
  Vector phases(eigenvalues_.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(Complex(0.0, t * eigenvalues_[i]));
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

DensityMatrix Propagator::evolve(const DensityMatrix& rho, double t) const {
  if (rho.particles() != n_ || rho.modes() != d_)
    throw std::invalid_argument("state and propagator sectors differ");
  Matrix u = phase(t);
  Matrix out = u * rho.m() * u.adjoint();
  // conjugation keeps hermiticity only up to roundoff; restore it exactly
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::from(SectorOperator{n_, d_, std::move(out)});
}

DensityMatrix evolve(const DensityMatrix& rho, const SectorOperator& h,
                     double t) {
  return Propagator(h).evolve(rho, t);
}

DensityMatrix free_frame(const DensityMatrix& rho_t, int n, double t,
                         const ModelSpec& model) {
  return Propagator(embed_one_body(model.h0, n, 1.0)).evolve(rho_t, t);
}

PreparedState product_state(const Vector& phi, int n) {
  check_generators({phi}, n);
  int d = static_cast<int>(phi.size());
  Occupation nu(d, 0);
  nu[0] = n;
  WignerMeasureSpec mu{d, {circle_atom(1.0, phi)}};
  mu.validate();
  return PreparedState{"product", n,
                       rotate_state(adapted_pure(nu, n, d), {phi}, n), mu};
}

PreparedState w_state(const Vector& phi, const Vector& psi, int n) {
  check_generators({phi, psi}, n);
  if (n < 2) throw std::invalid_argument("w state needs n >= 2");
  int d = static_cast<int>(phi.size());
  Occupation nu(d, 0);
  nu[0] = n - 1;
  nu[1] = 1;
  WignerMeasureSpec mu{d, {circle_atom(1.0, phi)}};
  mu.validate();
  return PreparedState{"w", n,
                       rotate_state(adapted_pure(nu, n, d), {phi, psi}, n), mu};
}

PreparedState ghz_state(const Vector& phi, const Vector& psi, int n) {
  check_generators({phi, psi}, n);
  int d = static_cast<int>(phi.size());
  const auto& basis = OccupationBasis::get(n, d);
  Occupation nu1(d, 0), nu2(d, 0);
  nu1[0] = n;
  nu2[1] = n;
  Vector v = Vector::Zero(basis.dim());
  v[basis.index(nu1)] = 1.0 / std::sqrt(2.0);
  v[basis.index(nu2)] = 1.0 / std::sqrt(2.0);
  WignerMeasureSpec mu{d, {circle_atom(0.5, phi), circle_atom(0.5, psi)}};
  mu.validate();
  return PreparedState{"ghz", n,
                       rotate_state(v * v.adjoint(), {phi, psi}, n), mu};
}

PreparedState twin_state(const Vector& phi1, const Vector& phi2, int n) {
  check_generators({phi1, phi2}, n);
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("twin state needs even n >= 2");
  int d = static_cast<int>(phi1.size());
  Occupation nu(d, 0);
  nu[0] = n / 2;
  nu[1] = n / 2;
  const Complex a(1.0 / std::sqrt(2.0));
  WignerMeasureSpec mu{d, {MeasureAtom{1.0, {phi1, phi2}, {a, a}}}};
  mu.validate();
  return PreparedState{
      "twin", n, rotate_state(adapted_pure(nu, n, d), {phi1, phi2}, n), mu};
}

PreparedState mixture_state(const Vector& e1, const Vector& e2, double alpha,
                            int n) {
  check_generators({e1, e2}, n);
  if (!(alpha >= 1.0))
    throw std::invalid_argument("mixture needs alpha >= 1");
  int d = static_cast<int>(e1.size());
  Occupation nu1(d, 0), nu2(d, 0);
  nu1[0] = n;
  nu2[1] = n;
  double w2 = 1.0 / alpha;
  Matrix rho = (1.0 - w2) * adapted_pure(nu1, n, d) +
               w2 * adapted_pure(nu2, n, d);
  // The limiting measure of the sequence (alpha(n) -> infinity) carries the
  // first circle only; the 1/alpha component is exactly the distance to it.
  WignerMeasureSpec mu{d, {circle_atom(1.0, e1)}};
  mu.validate();
  return PreparedState{"mixture", n, rotate_state(rho, {e1, e2}, n), mu};
}

}  // namespace mflab
