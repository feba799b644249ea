#include "mflab/oracle.hpp"

#include <cmath>

namespace mflab::oracle {

namespace {

long long ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Digits of a full tensor index, slot 0 most significant.
void digits_of(long long idx, int n, int d, std::vector<int>& out) {
  out.assign(n, 0);
  for (int k = n - 1; k >= 0; --k) {
    out[k] = static_cast<int>(idx % d);
    idx /= d;
  }
}

long long index_of(const std::vector<int>& digits, int d) {
  long long idx = 0;
  for (int v : digits) idx = idx * d + v;
  return idx;
}

}  // namespace

Matrix embedding(int n, int d) {
  const auto& basis = OccupationBasis::get(n, d);
  long long full = ipow(d, n);
  Matrix e = Matrix::Zero(full, basis.dim());
  std::vector<int> word;
  for (long long idx = 0; idx < full; ++idx) {
    digits_of(idx, n, d, word);
    Occupation nu(d, 0);
    for (int v : word) nu[v] += 1;
    int col = basis.index(nu);
    e(idx, col) = 1.0 / std::sqrt(multinomial(nu));
  }
  return e;
}

Matrix symmetrizer(int n, int d) {
  Matrix e = embedding(n, d);
  return e * e.adjoint();
}

Matrix kron_power(const Matrix& u, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    Matrix next(out.rows() * u.rows(), out.cols() * u.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * u.rows(), j * u.cols(), u.rows(), u.cols()) =
            out(i, j) * u;
    out.swap(next);
  }
  return out;
}

Matrix full_one_body(const Matrix& h, int n) {
  int d = static_cast<int>(h.rows());
  long long full = ipow(d, n);
  Matrix out = Matrix::Zero(full, full);
  std::vector<int> word, moved;
  for (long long col = 0; col < full; ++col) {
    digits_of(col, n, d, word);
    for (int slot = 0; slot < n; ++slot) {
      moved = word;
      for (int a = 0; a < d; ++a) {
        moved[slot] = a;
        out(index_of(moved, d), col) += h(a, word[slot]);
      }
    }
  }
  return out;
}

Matrix full_pair_sum(const Matrix& v2, int n, int d) {
  long long full = ipow(d, n);
  Matrix out = Matrix::Zero(full, full);
  std::vector<int> word, moved;
  for (long long col = 0; col < full; ++col) {
    digits_of(col, n, d, word);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        moved = word;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            moved[i] = a;
            moved[j] = b;
            Complex v = v2(a * d + b, word[i] * d + word[j]);
            if (v != Complex(0)) out(index_of(moved, d), col) += v;
          }
      }
  }
  return out;
}

Matrix full_partial_trace(const Matrix& rho_full, int n, int d, int p) {
  long long keep = ipow(d, p);
  long long drop = ipow(d, n - p);
  Matrix out = Matrix::Zero(keep, keep);
  for (long long a = 0; a < keep; ++a)
    for (long long b = 0; b < keep; ++b) {
      Complex s = 0.0;
      for (long long r = 0; r < drop; ++r)
        s += rho_full(a * drop + r, b * drop + r);
      out(a, b) = s;
    }
  return out;
}

Matrix lift_operator(const SectorOperator& a) {
  Matrix e = embedding(a.n, a.d);
  return e * a.m * e.adjoint();
}

Vector lift_state(const Vector& amplitudes, int n, int d) {
  return embedding(n, d) * amplitudes;
}

}  // namespace mflab::oracle
