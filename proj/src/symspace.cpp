#include "mflab/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>

namespace mflab {

namespace {

void check_mode_count(int d) {
  if (d < 1) throw std::invalid_argument("mode count must be >= 1");
}

// Recursive reverse-lexicographic enumeration: leading occupation runs from
// n down to 0, the tail is enumerated the same way on the remaining modes.
void enumerate_rec(int n, int d, Occupation& prefix,
                   std::vector<Occupation>& out) {
  if (d == 1) {
    prefix.push_back(n);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = n; k >= 0; --k) {
    prefix.push_back(k);
    enumerate_rec(n - k, d - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

OccupationBasis::OccupationBasis(int n, int d) : n_(n), d_(d) {
  if (n < 0) throw std::invalid_argument("particle count must be >= 0");
  check_mode_count(d);
  Occupation prefix;
  prefix.reserve(d);
  enumerate_rec(n, d, prefix, states_);
}

int OccupationBasis::find(const Occupation& nu) const {
  if (static_cast<int>(nu.size()) != d_) return -1;
  int total = 0;
  for (int c : nu) {
    if (c < 0) return -1;
    total += c;
  }
  if (total != n_) return -1;
  // Rank within the reverse-lexicographic order: states with a larger leading
  // occupation come first, then recurse on the tail.
  int idx = 0;
  int remaining = n_;
  for (int j = 0; j < d_ - 1; ++j) {
    for (int k = remaining; k > nu[j]; --k) {
      // size of the block with leading occupation k on d_-1-j trailing modes
      idx += static_cast<int>(binomial(remaining - k + d_ - j - 2, d_ - j - 2));
    }
    remaining -= nu[j];
  }
  return idx;
}

int OccupationBasis::index(const Occupation& nu) const {
  int i = find(nu);
  if (i < 0) throw std::invalid_argument("occupation vector not in basis");
  return i;
}

const OccupationBasis& OccupationBasis::get(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<OccupationBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<OccupationBasis>(n, d)).first;
  return *it->second;
}

const OccupationBasis& enumerate_basis(int n, int d) {
  return OccupationBasis::get(n, d);
}

double binomial(int a, int b) {
  if (b < 0 || b > a) return 0.0;
  b = std::min(b, a - b);
  double r = 1.0;
  for (int j = 1; j <= b; ++j) r = r * (a - b + j) / j;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

double multinomial(const Occupation& nu) {
  // prod over modes of C(partial sum, nu_j); exact in double while the
  // intermediate binomials stay below 2^53.
  int total = 0;
  double r = 1.0;
  for (int c : nu) {
    total += c;
    r *= binomial(total, c);
  }
  return r;
}

double split_amplitude(const Occupation& whole, const Occupation& part) {
  int n = 0, p = 0;
  double prod = 1.0;
  for (size_t j = 0; j < whole.size(); ++j) {
    if (part[j] > whole[j]) return 0.0;
    n += whole[j];
    p += part[j];
    prod *= binomial(whole[j], part[j]);
  }
  return std::sqrt(prod / binomial(n, p));
}

SectorOperator SectorOperator::zero(int n, int d) {
  int dim = OccupationBasis::get(n, d).dim();
  return SectorOperator{n, d, Matrix::Zero(dim, dim)};
}

SectorOperator SectorOperator::identity(int n, int d) {
  int dim = OccupationBasis::get(n, d).dim();
  return SectorOperator{n, d, Matrix::Identity(dim, dim)};
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix DensityMatrix::from(SectorOperator op) {
  const auto& basis = OccupationBasis::get(op.n, op.d);
  if (op.m.rows() != basis.dim() || op.m.cols() != basis.dim())
    throw std::invalid_argument("density matrix has wrong dimension");
  if (!is_hermitian(op.m))
    throw std::invalid_argument("density matrix must be Hermitian");
  if (std::abs(op.m.trace().real() - 1.0) > 1e-10 ||
      std::abs(op.m.trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed");
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix must be positive");
  return DensityMatrix{std::move(op)};
}

DensityMatrix DensityMatrix::pure(const Vector& amplitudes, int n, int d) {
  const auto& basis = OccupationBasis::get(n, d);
  if (amplitudes.size() != basis.dim())
    throw std::invalid_argument("state vector has wrong dimension");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("state vector must be normalized");
  return DensityMatrix{
      SectorOperator{n, d, amplitudes * amplitudes.adjoint()}};
}

Vector power_amplitudes(const Vector& z, int n) {
  int d = static_cast<int>(z.size());
  check_mode_count(d);
  if (n < 0) throw std::invalid_argument("power must be >= 0");
  const auto& basis = OccupationBasis::get(n, d);
  Vector out(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const Occupation& nu = basis.state(i);
    Complex mono = std::sqrt(multinomial(nu));
    for (int j = 0; j < d; ++j)
      for (int r = 0; r < nu[j]; ++r) mono *= z[j];
    out[i] = mono;
  }
  return out;
}

Vector sym_power_state(const Vector& phi, int n) {
  if (std::abs(phi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("sym_power_state expects a unit vector");
  return power_amplitudes(phi, n);
}

SectorOperator sym_power_unitary(const Matrix& u, int n) {
  int d = static_cast<int>(u.rows());
  check_mode_count(d);
  if (u.cols() != d) throw std::invalid_argument("matrix must be square");
  if ((u * u.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("sym_power_unitary expects a unitary matrix");

  const auto& basis = OccupationBasis::get(n, d);
  SectorOperator out{n, d, Matrix::Zero(basis.dim(), basis.dim())};

  // Column for |nu>: add one particle at a time in the rotated mode u e_j,
  // nu_j times per mode j, starting from the vacuum.
  for (int col = 0; col < basis.dim(); ++col) {
    const Occupation& nu = basis.state(col);
    Vector cur(1);
    cur[0] = 1.0;
    int k = 0;  // particles placed so far
    double norm_correction = 1.0;
    for (int j = 0; j < d; ++j) {
      for (int r = 0; r < nu[j]; ++r) {
        const auto& from = OccupationBasis::get(k, d);
        const auto& to = OccupationBasis::get(k + 1, d);
        Vector next = Vector::Zero(to.dim());
        for (int i = 0; i < from.dim(); ++i) {
          if (cur[i] == Complex(0)) continue;
          Occupation mu = from.state(i);
          for (int a = 0; a < d; ++a) {
            if (u(a, j) == Complex(0)) continue;
            mu[a] += 1;
            next[to.index(mu)] += u(a, j) * std::sqrt(double(mu[a])) * cur[i];
            mu[a] -= 1;
          }
        }
        cur.swap(next);
        ++k;
      }
      norm_correction *= factorial(nu[j]);
    }
    out.m.col(col) = cur / std::sqrt(norm_correction);
  }
  return out;
}

SectorOperator embed_one_body(const Matrix& h, int n, double eps) {
  int d = static_cast<int>(h.rows());
  check_mode_count(d);
  if (h.cols() != d) throw std::invalid_argument("matrix must be square");
  if (!is_hermitian(h))
    throw std::invalid_argument("embed_one_body expects a Hermitian matrix");

  const auto& basis = OccupationBasis::get(n, d);
  SectorOperator out{n, d, Matrix::Zero(basis.dim(), basis.dim())};
  for (int col = 0; col < basis.dim(); ++col) {
    const Occupation& nu = basis.state(col);
    Complex diag = 0.0;
    for (int j = 0; j < d; ++j) diag += h(j, j) * double(nu[j]);
    out.m(col, col) += eps * diag;
    for (int j = 0; j < d; ++j) {
      if (nu[j] == 0) continue;
      for (int i = 0; i < d; ++i) {
        if (i == j || h(i, j) == Complex(0)) continue;
        Occupation target = nu;
        target[j] -= 1;
        target[i] += 1;
        double amp = std::sqrt(double(nu[j]) * double(nu[i] + 1));
        out.m(basis.index(target), col) += eps * h(i, j) * amp;
      }
    }
  }
  return out;
}

SectorOperator embed_pair(const SectorOperator& pair_kernel, int n,
                          double coupling) {
  if (pair_kernel.n != 2)
    throw std::invalid_argument("pair kernel must live on the 2-sector");
  if (!is_hermitian(pair_kernel.m))
    throw std::invalid_argument("pair kernel must be Hermitian");
  int d = pair_kernel.d;
  const auto& two = OccupationBasis::get(2, d);

  // Full two-particle matrix elements <ab| 2K |cd> derived from the sector
  // kernel; unordered pairs pick up 1/sqrt(2) per repeated-index mismatch.
  auto full_element = [&](int a, int b, int c, int cc) {
    Occupation row(d, 0), col(d, 0);
    row[a] += 1;
    row[b] += 1;
    col[c] += 1;
    col[cc] += 1;
    double ka = (a == b) ? 1.0 : 1.0 / std::sqrt(2.0);
    double kc = (c == cc) ? 1.0 : 1.0 / std::sqrt(2.0);
    return 2.0 * ka * kc * pair_kernel.m(two.index(row), two.index(col));
  };

  const auto& basis = OccupationBasis::get(n, d);
  SectorOperator out{n, d, Matrix::Zero(basis.dim(), basis.dim())};
  // (coupling/2) sum_{abcd} <ab|2K|cd> adag_a adag_b a_d a_c
  for (int col = 0; col < basis.dim(); ++col) {
    const Occupation& nu = basis.state(col);
    for (int c = 0; c < d; ++c) {
      if (nu[c] == 0) continue;
      for (int dd = 0; dd < d; ++dd) {
        Occupation lowered = nu;
        lowered[c] -= 1;
        if (lowered[dd] == 0) continue;
        double down = std::sqrt(double(nu[c]) * double(lowered[dd]));
        lowered[dd] -= 1;
        for (int b = 0; b < d; ++b) {
          for (int a = 0; a < d; ++a) {
            Complex v = full_element(a, b, c, dd);
            if (v == Complex(0)) continue;
            Occupation target = lowered;
            target[b] += 1;
            double up = std::sqrt(double(target[b]));
            target[a] += 1;
            up *= std::sqrt(double(target[a]));
            out.m(basis.index(target), col) +=
                0.5 * coupling * v * down * up;
          }
        }
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int p) {
  int n = rho.particles();
  int d = rho.modes();
  if (p < 1 || p > n)
    throw std::invalid_argument("partial_trace expects 1 <= p <= n");
  const auto& big = OccupationBasis::get(n, d);
  const auto& small = OccupationBasis::get(p, d);
  const auto& rest = OccupationBasis::get(n - p, d);

  Matrix out = Matrix::Zero(small.dim(), small.dim());
  Occupation left(d), right(d);
  for (int k = 0; k < rest.dim(); ++k) {
    const Occupation& kappa = rest.state(k);
    for (int i = 0; i < small.dim(); ++i) {
      const Occupation& sigma = small.state(i);
      for (int j = 0; j < d; ++j) left[j] = sigma[j] + kappa[j];
      double bi = split_amplitude(left, sigma);
      int row = big.index(left);
      for (int jj = 0; jj < small.dim(); ++jj) {
        const Occupation& sigma2 = small.state(jj);
        for (int j = 0; j < d; ++j) right[j] = sigma2[j] + kappa[j];
        double bj = split_amplitude(right, sigma2);
        out(i, jj) += bi * bj * rho.m()(row, big.index(right));
      }
    }
  }
  return DensityMatrix::from(SectorOperator{p, d, std::move(out)});
}

double trace_norm(const SectorOperator& a) {
  if (!is_hermitian(a.m))
    throw std::invalid_argument("trace_norm expects a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed");
  return es.eigenvalues().cwiseAbs().sum();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

void dump_matrix(std::ostream& os, const Matrix& m) {
  char line[96];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(line, sizeof(line), "%lld,%lld,%.17g,%.17g\n",
                    static_cast<long long>(i), static_cast<long long>(j),
                    m(i, j).real(), m(i, j).imag());
      os << line;
    }
}

}  // namespace mflab
