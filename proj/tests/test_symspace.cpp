#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mflab/oracle.hpp"
#include "mflab/symspace.hpp"

using namespace mflab;

namespace {

std::mt19937 rng(20240811u);

Complex random_scalar() {
  static std::normal_distribution<double> dist;
  return Complex(dist(rng), dist(rng));
}

Matrix random_matrix(int r, int c) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = random_scalar();
  return m;
}

Matrix random_hermitian(int dim) {
  Matrix g = random_matrix(dim, dim);
  return 0.5 * (g + g.adjoint().eval());
}

Matrix random_unitary(int dim) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, dim));
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

Vector random_unit(int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = random_scalar();
  return v / v.norm();
}

DensityMatrix random_density(int n, int d) {
  const int dim = OccupationBasis::get(n, d).dim();
  Matrix g = random_matrix(dim, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix::from(SectorOperator{n, d, std::move(rho)});
}

}  // namespace

TEST_CASE("occupation basis enumeration and ranking") {
  const OccupationBasis& b22 = OccupationBasis::get(2, 2);
  REQUIRE(b22.dim() == 3);
  CHECK(b22.state(0) == Occupation{2, 0});
  CHECK(b22.state(1) == Occupation{1, 1});
  CHECK(b22.state(2) == Occupation{0, 2});

  const OccupationBasis& b23 = OccupationBasis::get(2, 3);
  REQUIRE(b23.dim() == 6);
  CHECK(b23.state(0) == Occupation{2, 0, 0});
  CHECK(b23.state(1) == Occupation{1, 1, 0});
  CHECK(b23.state(2) == Occupation{1, 0, 1});
  CHECK(b23.state(3) == Occupation{0, 2, 0});
  CHECK(b23.state(4) == Occupation{0, 1, 1});
  CHECK(b23.state(5) == Occupation{0, 0, 2});

  CHECK(OccupationBasis::get(4, 3).dim() == 15);
  CHECK(OccupationBasis::get(128, 2).dim() == 129);

  for (int n : {1, 3, 5}) {
    for (int d : {2, 3, 4}) {
      const OccupationBasis& basis = OccupationBasis::get(n, d);
      for (int i = 0; i < basis.dim(); ++i)
        CHECK(basis.index(basis.state(i)) == i);
    }
  }
  CHECK(b22.find({3, 0}) == -1);
  CHECK_THROWS_AS((void)b22.index({0, 1}), std::invalid_argument);
}

TEST_CASE("combinatorial helpers are exact") {
  CHECK(binomial(128, 3) == 341376.0);
  CHECK(binomial(6, 0) == 1.0);
  CHECK(binomial(3, 5) == 0.0);
  CHECK(factorial(10) == 3628800.0);
  CHECK(multinomial({2, 1}) == 3.0);
  CHECK(multinomial({1, 1, 1, 1}) == 24.0);
  CHECK(multinomial({0, 0}) == 1.0);
}

TEST_CASE("split amplitudes: values and the Vandermonde sum rule") {
  CHECK(split_amplitude({2, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(split_amplitude({1, 1}, {1, 0}) ==
        doctest::Approx(std::sqrt(0.5)));
  CHECK(split_amplitude({1, 1}, {0, 1}) ==
        doctest::Approx(std::sqrt(0.5)));

  // sum over parts of beta^2 at fixed |part| is 1 (Vandermonde identity)
  const Occupation nu = {3, 2, 4};
  const int n = 9;
  for (int p = 1; p < n; ++p) {
    double total = 0.0;
    const OccupationBasis& parts = OccupationBasis::get(p, 3);
    for (const Occupation& sigma : parts.states()) {
      bool fits = true;
      for (int j = 0; j < 3; ++j) fits = fits && sigma[j] <= nu[j];
      if (!fits) continue;
      const double beta = split_amplitude(nu, sigma);
      total += beta * beta;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("symmetric-power amplitudes") {
  Vector phi(2);
  phi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  Vector amps = sym_power_state(phi, 2);
  REQUIRE(amps.size() == 3);
  CHECK(std::abs(amps(0) - 0.5) < 1e-15);
  CHECK(std::abs(amps(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(amps(2) - 0.5) < 1e-15);

  for (int n : {1, 2, 5}) {
    Vector z = random_unit(3);
    Vector a = sym_power_state(z, n);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // agreement with the full tensor power
    Matrix e = oracle::embedding(n, 3);
    Vector full = oracle::lift_state(a, n, 3);
    Vector tensor = Vector::Ones(1);
    for (int k = 0; k < n; ++k) {
      Vector next(tensor.size() * 3);
      for (Eigen::Index i = 0; i < tensor.size(); ++i)
        for (int j = 0; j < 3; ++j) next(i * 3 + j) = tensor(i) * z(j);
      tensor = next;
    }
    CHECK((full - tensor).norm() < 1e-12);
  }
}

TEST_CASE("power amplitudes scale like the tensor power for non-unit z") {
  Vector z(2);
  z << Complex(0.3, 0.4), Complex(-0.2, 0.9);
  Vector a3 = power_amplitudes(z, 3);
  const double norm2 = std::pow(z.squaredNorm(), 3);
  CHECK(a3.squaredNorm() == doctest::Approx(norm2).epsilon(1e-12));
}

TEST_CASE("sym_power_unitary restricts the tensor power") {
  for (int n : {1, 2, 3}) {
    Matrix u = random_unitary(2);
    SectorOperator un = sym_power_unitary(u, n);
    // unitary on the sector
    CHECK(operator_norm(un.m.adjoint() * un.m -
                        Matrix::Identity(un.dim(), un.dim())) < 1e-12);
    // intertwines symmetric powers
    Vector phi = random_unit(2);
    Vector lhs = un.m * sym_power_state(phi, n);
    Vector rhs = sym_power_state((u * phi).eval(), n);
    CHECK((lhs - rhs).norm() < 1e-12);
    // matches the full tensor power compressed to the sector
    Matrix e = oracle::embedding(n, 2);
    Matrix full = oracle::kron_power(u, n);
    CHECK(operator_norm(un.m - e.adjoint() * full * e) < 1e-12);
  }
}

TEST_CASE("one-body embedding: hopping matrix on two particles") {
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  SectorOperator a = embed_one_body(h, 2, 1.0);
  Matrix expected(3, 3);
  const double r2 = std::sqrt(2.0);
  expected << 0, r2, 0, r2, 0, r2, 0, r2, 0;
  CHECK(operator_norm(a.m - expected) < 1e-14);

  // identity embeds to eps * n
  SectorOperator num = embed_one_body(Matrix::Identity(3, 3), 5, 0.25);
  CHECK(operator_norm(num.m - 1.25 * Matrix::Identity(num.dim(), num.dim())) <
        1e-14);
}

TEST_CASE("one-body embedding matches the full tensor sum") {
  for (int n : {2, 3, 4}) {
    Matrix h = random_hermitian(2);
    SectorOperator a = embed_one_body(h, n, 1.0);
    Matrix e = oracle::embedding(n, 2);
    Matrix full = oracle::full_one_body(h, n);
    CHECK(operator_norm(a.m - e.adjoint() * full * e) < 1e-11);
  }
}

TEST_CASE("pair embedding matches the full tensor pair sum") {
  const int d = 2;
  for (int n : {2, 3, 4}) {
    SectorOperator k2{2, d, random_hermitian(3)};
    SectorOperator a = embed_pair(k2, n, 1.0 / n);
    Matrix e2 = oracle::embedding(2, d);
    Matrix v2 = e2 * (2.0 * k2.m) * e2.adjoint();
    Matrix en = oracle::embedding(n, d);
    Matrix full = (1.0 / n) * oracle::full_pair_sum(v2, n, d);
    CHECK(operator_norm(a.m - en.adjoint() * full * en) < 1e-11);
  }
}

TEST_CASE("partial trace of a product state is the product state") {
  Vector phi = random_unit(2);
  DensityMatrix rho = DensityMatrix::pure(sym_power_state(phi, 6), 6, 2);
  for (int p : {1, 2, 3}) {
    DensityMatrix reduced = partial_trace(rho, p);
    Matrix expected =
        (sym_power_state(phi, p) * sym_power_state(phi, p).adjoint());
    CHECK(operator_norm(reduced.m() - expected) < 1e-12);
  }
}

TEST_CASE("partial trace of the balanced two-mode state is hypergeometric") {
  // two particles in each mode, reduced to pairs: weights
  // C(2,k) C(2,2-k) / C(4,2) on the diagonal
  Vector amps = Vector::Zero(5);
  amps(OccupationBasis::get(4, 2).index({2, 2})) = 1.0;
  DensityMatrix rho = DensityMatrix::pure(amps, 4, 2);
  DensityMatrix r2 = partial_trace(rho, 2);
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 1.0 / 6.0;
  expected(1, 1) = 4.0 / 6.0;
  expected(2, 2) = 1.0 / 6.0;
  CHECK(operator_norm(r2.m() - expected) < 1e-14);
}

TEST_CASE("partial trace agrees with the full tensor trace-out") {
  const int d = 2;
  for (int n : {2, 3, 4}) {
    DensityMatrix rho = random_density(n, d);
    Matrix full = oracle::lift_operator(rho.op);
    for (int p = 1; p < n; ++p) {
      Matrix ep = oracle::embedding(p, d);
      Matrix reference =
          ep.adjoint() * oracle::full_partial_trace(full, n, d, p) * ep;
      CHECK(operator_norm(partial_trace(rho, p).m() - reference) < 1e-12);
    }
  }
}

TEST_CASE("partial trace is the adjoint of embedding an observable") {
  const int d = 2, n = 4;
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
            a(i, j) * b;
    return out;
  };
  DensityMatrix rho = random_density(n, d);
  Matrix full = oracle::lift_operator(rho.op);
  for (int p : {1, 2, 3}) {
    SectorOperator a{p, d, random_hermitian(OccupationBasis::get(p, d).dim())};
    Matrix ep = oracle::embedding(p, d);
    const int rest = static_cast<int>(std::lround(std::pow(d, n - p)));
    Matrix a_first = kron((ep * a.m * ep.adjoint()).eval(),
                          Matrix::Identity(rest, rest));
    const Complex via_full = (full * a_first).trace();
    const Complex via_sector = (partial_trace(rho, p).m() * a.m).trace();
    CHECK(std::abs(via_full - via_sector) < 1e-12);
  }
}

TEST_CASE("density-matrix factory validates its input") {
  SectorOperator bad{1, 2, Matrix::Zero(2, 2)};
  bad.m(0, 1) = 1.0;  // not hermitian
  CHECK_THROWS_AS(DensityMatrix::from(bad), std::invalid_argument);

  SectorOperator half{1, 2, 0.5 * Matrix::Identity(2, 2)};
  CHECK_NOTHROW(DensityMatrix::from(half));
  half.m *= 0.9;  // trace 0.9
  CHECK_THROWS_AS(DensityMatrix::from(half), std::invalid_argument);

  SectorOperator indef{1, 2, Matrix::Zero(2, 2)};
  indef.m(0, 0) = 1.5;
  indef.m(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from(indef), std::invalid_argument);
}

TEST_CASE("trace norm and operator norm") {
  SectorOperator a{1, 2, Matrix::Zero(2, 2)};
  a.m(0, 0) = 0.5;
  a.m(1, 1) = -0.5;
  CHECK(trace_norm(a) == doctest::Approx(1.0));

  Matrix h = random_hermitian(5);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  SectorOperator b{1, 5, h};
  // trace norm is the absolute eigenvalue sum
  CHECK(trace_norm(b) ==
        doctest::Approx(es.eigenvalues().cwiseAbs().sum()).epsilon(1e-12));
  CHECK(operator_norm(h) ==
        doctest::Approx(es.eigenvalues().cwiseAbs().maxCoeff())
            .epsilon(1e-12));
}

TEST_CASE("matrix dump format") {
  Matrix m(1, 2);
  m(0, 0) = Complex(0.5, -0.25);
  m(0, 1) = Complex(1.0 / 3.0, 0.0);
  std::ostringstream os;
  dump_matrix(os, m);
  CHECK(os.str() ==
        "0,0,0.5,-0.25\n0,1,0.33333333333333331,0\n");
}
