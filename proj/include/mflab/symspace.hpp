// Symmetric (bosonic) n-particle sectors over C^d: occupation bases, dense
// sector operators, embeddings of one- and two-body operators, reduced
// density matrices, trace norms.
#ifndef MFLAB_SYMSPACE_HPP
#define MFLAB_SYMSPACE_HPP

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace mflab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Occupation = std::vector<int>;

// Thrown when a computation (not its inputs) goes numerically bad.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Occupation-number basis of the n-particle symmetric sector over C^d.
// States are enumerated in reverse-lexicographic order ((2,0),(1,1),(0,2),...)
// so that dumps and CSV output are byte-stable across runs and platforms.
class OccupationBasis {
 public:
  OccupationBasis(int n, int d);

  int particles() const { return n_; }
  int modes() const { return d_; }
  int dim() const { return static_cast<int>(states_.size()); }
  const Occupation& state(int i) const { return states_[i]; }
  const std::vector<Occupation>& states() const { return states_; }

  /// Index of an occupation vector; throws std::invalid_argument if absent.
  int index(const Occupation& nu) const;
  /// Index of an occupation vector, or -1 if it does not belong to the basis.
  int find(const Occupation& nu) const;

  /// Shared immutable instance; thread-safe, never evicted.
  static const OccupationBasis& get(int n, int d);

 private:
  int n_ = 0, d_ = 0;
  std::vector<Occupation> states_;
};

/// Basis of the n-particle sector (cached). dim = binom(n+d-1, d-1).
const OccupationBasis& enumerate_basis(int n, int d);

double binomial(int a, int b);
double factorial(int n);
/// (sum nu)! / prod_j nu_j!
double multinomial(const Occupation& nu);

// Coefficient linking a symmetric state to its split into a leading group of
// |part| slots and the complementary group:
//   |whole> = sum_part beta(whole,part) |part> (x) |whole-part>,
//   beta(whole,part)^2 = prod_j C(whole_j, part_j) / C(n, |part|).
// The same coefficient merges two sector states under symmetrization.
double split_amplitude(const Occupation& whole, const Occupation& part);

// Dense linear operator on one symmetric sector, stored on the occupation
// basis of (n, d).
struct SectorOperator {
  int n = 0;
  int d = 0;
  Matrix m;

  const OccupationBasis& basis() const { return OccupationBasis::get(n, d); }
  int dim() const { return basis().dim(); }
  static SectorOperator zero(int n, int d);
  static SectorOperator identity(int n, int d);
};

bool is_hermitian(const Matrix& m, double tol = 1e-10);

// Density matrix on a symmetric sector. The factory enforces hermiticity,
// unit trace and spectrum >= -1e-10.
struct DensityMatrix {
  SectorOperator op;

  int particles() const { return op.n; }
  int modes() const { return op.d; }
  const Matrix& m() const { return op.m; }

  static DensityMatrix from(SectorOperator op);
  /// Rank-one projector onto a (normalized) sector state.
  static DensityMatrix pure(const Vector& amplitudes, int n, int d);
};

// Coefficients of z^(x)n on the occupation basis: c_nu = sqrt(M(nu)) prod z^nu.
// Normalized iff ||z|| = 1; valid for any vector.
Vector power_amplitudes(const Vector& z, int n);

/// n-fold symmetric power of a unit vector, as occupation-basis amplitudes.
Vector sym_power_state(const Vector& phi, int n);

/// Restriction of U^(x)n to the symmetric sector; U must be unitary.
SectorOperator sym_power_unitary(const Matrix& u, int n);

/// eps * sum_k 1x..x h x..x1 restricted to the n-particle sector.
SectorOperator embed_one_body(const Matrix& h, int n, double eps);

/// coupling * sum_{i<j} (2*K)_{ij} restricted to the n-particle sector,
/// where K is a Hermitian kernel on the two-particle sector.
SectorOperator embed_pair(const SectorOperator& pair_kernel, int n,
                          double coupling);

/// p-particle reduced density matrix, normalized so that
/// tr[rho^(p) A] = tr[rho (A x 1^(n-p))|_sym] for every p-sector A.
DensityMatrix partial_trace(const DensityMatrix& rho, int p);

/// Sum of |eigenvalues|; input must be Hermitian.
double trace_norm(const SectorOperator& a);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// Rows "i,j,re,im" with 17 significant digits, row-major, one per entry.
void dump_matrix(std::ostream& os, const Matrix& m);

}  // namespace mflab

#endif  // MFLAB_SYMSPACE_HPP
