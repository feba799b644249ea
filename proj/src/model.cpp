#include "mflab/model.hpp"

namespace mflab {

ModelSpec ModelSpec::make(Matrix h0, SectorOperator pair_kernel) {
  int d = static_cast<int>(h0.rows());
  if (d < 1 || h0.cols() != d)
    throw std::invalid_argument("h0 must be a square matrix");
  if (!is_hermitian(h0)) throw std::invalid_argument("h0 must be Hermitian");
  if (pair_kernel.n != 2 || pair_kernel.d != d)
    throw std::invalid_argument("pair kernel must live on the 2-sector over the same modes");
  if (!is_hermitian(pair_kernel.m))
    throw std::invalid_argument("pair kernel must be Hermitian");
  double qn = operator_norm(pair_kernel.m);
  return ModelSpec{d, std::move(h0), std::move(pair_kernel), qn};
}

SectorOperator onsite_pair_kernel(int d, double g) {
  const auto& two = OccupationBasis::get(2, d);
  SectorOperator k = SectorOperator::zero(2, d);
  for (int i = 0; i < two.dim(); ++i) {
    const Occupation& nu = two.state(i);
    bool doubly = false;
    for (int c : nu)
      if (c == 2) doubly = true;
    if (doubly) k.m(i, i) = 0.5 * g;
  }
  return k;
}

ModelSpec dimer_model(double g) {
  Matrix h0(2, 2);
  h0 << 0.0, 1.0, 1.0, 0.0;
  return ModelSpec::make(h0, onsite_pair_kernel(2, g));
}

Matrix one_body_phase(const Matrix& h0, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h0);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed");
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(Complex(0.0, t * es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace mflab
