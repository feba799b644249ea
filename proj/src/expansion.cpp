#include "mflab/expansion.hpp"

#include <cmath>
#include <functional>

namespace mflab {

namespace {

constexpr int kMaxSeriesOrder = 4;

void check_series_args(int k, int g) {
  if (k < 0 || k > kMaxSeriesOrder)
    throw std::invalid_argument("series order must satisfy 0 <= k <= 4");
  if (g < 1) throw std::invalid_argument("need at least one quadrature node");
}

// k-fold simplex integral of leaf(C^(k)(s_k..s_1,t)) over
// 0 <= s_k <= ... <= s_1 <= t, Gauss-Legendre with g nodes per level.
// The i^k factor is left to the caller.
Complex nested_bracket_integral(
    int k, double t, int g, const PolySymbol& base_t, const ModelSpec& model,
    const std::function<Complex(const PolySymbol&)>& leaf) {
  if (k == 0) return leaf(base_t);
  auto [x, w] = gauss_legendre(g);
  std::function<Complex(int, double, const PolySymbol&)> rec =
      [&](int level, double upper, const PolySymbol& sym) -> Complex {
    Complex acc = 0.0;
    for (int j = 0; j < g; ++j) {
      double s = upper * x[j];
      PolySymbol wrapped = poisson(interaction_symbol(model, s), sym, 1);
      Complex inner =
          (level == k) ? leaf(wrapped) : rec(level + 1, s, wrapped);
      acc += upper * w[j] * inner;
    }
    return acc;
  };
  return rec(1, t, base_t);
}

Complex ipow_unit(int k) {
  static const Complex table[4] = {Complex(1, 0), Complex(0, 1),
                                   Complex(-1, 0), Complex(0, -1)};
  return table[((k % 4) + 4) % 4];
}

}  // namespace

std::pair<RealVector, RealVector> gauss_legendre(int g) {
  if (g < 1) throw std::invalid_argument("need at least one node");
  // Golub-Welsch: eigenvalues of the Jacobi matrix give the nodes on [-1,1],
  // squared first eigenvector components give the weights.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(g, g);
  for (int j = 1; j < g; ++j) {
    double b = j / std::sqrt(4.0 * j * j - 1.0);
    jacobi(j, j - 1) = b;
    jacobi(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed");
  RealVector x(g), w(g);
  for (int j = 0; j < g; ++j) {
    x[j] = 0.5 * (es.eigenvalues()[j] + 1.0);  // map to [0,1]
    double c = es.eigenvectors()(0, j);
    w[j] = c * c;  // weights on [-1,1] are 2c^2; the map halves them
  }
  return {x, w};
}

PolySymbol heisenberg_symbol(const PolySymbol& b, double t,
                             const ModelSpec& model) {
  if (b.d != model.d)
    throw std::invalid_argument("symbol and model mode counts differ");
  if (t == 0.0) return b;
  Matrix wphase = one_body_phase(model.h0, t);
  Matrix left = sym_power_unitary(wphase, b.q).m;
  Matrix right = sym_power_unitary(wphase, b.p).m;
  return PolySymbol{b.p, b.q, b.d, left * b.kernel * right.adjoint()};
}

PolySymbol interaction_symbol(const ModelSpec& model, double t) {
  return heisenberg_symbol(pair_symbol(model.pair_kernel), t, model);
}

PolySymbol c0_symbol(const BracketTermRequest& req, const ModelSpec& model) {
  PolySymbol sym = heisenberg_symbol(req.base, req.t, model);
  for (auto it = req.times.rbegin(); it != req.times.rend(); ++it)
    sym = poisson(interaction_symbol(model, *it), sym, 1);
  return sym;
}

Complex quantum_series_term(int k, const DensityMatrix& rho,
                            const PolySymbol& a, double t, int g, int n,
                            const ModelSpec& model) {
  check_series_args(k, g);
  if (rho.particles() != n || rho.modes() != model.d)
    throw std::invalid_argument("state does not match the sector");
  double eps = 1.0 / n;
  auto leaf = [&](const PolySymbol& sym) -> Complex {
    SectorMap block = wick_restrict(sym, n, eps);
    return (rho.m() * block.m).trace();
  };
  PolySymbol base_t = heisenberg_symbol(a, t, model);
  return ipow_unit(k) *
         nested_bracket_integral(k, t, g, base_t, model, leaf);
}

Complex classical_series_term(int k, const WignerMeasureSpec& mu,
                              const PolySymbol& a, double t, int g,
                              int quad_points, const ModelSpec& model) {
  check_series_args(k, g);
  if (a.p != a.q)
    throw std::invalid_argument("measure pairing needs a square symbol");
  auto nodes = quadrature_nodes(mu, a.p + k, quad_points);
  auto leaf = [&](const PolySymbol& sym) -> Complex {
    Complex acc = 0.0;
    for (const auto& node : nodes)
      acc += node.weight * evaluate(sym, node.point);
    return acc;
  };
  PolySymbol base_t = heisenberg_symbol(a, t, model);
  return ipow_unit(k) *
         nested_bracket_integral(k, t, g, base_t, model, leaf);
}

double prop3_constant(double c) {
  if (!(c > 2.0)) throw std::invalid_argument("constant requires c > 2");
  double best = 0.0;
  double term = 0.0;
  for (int p = 1; p <= 4000; ++p) {
    term = std::pow(2.0 / c, p) * (3.0 + double(p) * p);
    best = std::max(best, term);
    if (p > 16 && term < best * 1e-9) break;
  }
  return best;
}

double bracket_kernel_bound(int p, int m, double qnorm, double bnorm) {
  double rising = 1.0;
  for (int j = 0; j < m; ++j) rising *= (p + j);
  return std::pow(4.0, m) * rising * std::pow(qnorm, m) * bnorm;
}

double pair_bracket_bound(int p, double qnorm, double bnorm) {
  return 4.0 * p * (p - 1.0) * qnorm * bnorm;
}

double series_term_envelope(int p, int k, double t, double qnorm,
                            double anorm) {
  return std::pow(4.0, k) * binomial(p + k - 1, k) *
         std::pow(std::abs(t) * qnorm, k) * anorm;
}

SeriesReport prop3_check(const DensityMatrix& rho, const PolySymbol& a,
                         double t, int kmax, int n, const ModelSpec& model,
                         double c, int g) {
  if (a.p != a.q)
    throw std::invalid_argument("residual check needs a square symbol");
  if (a.p < 1) throw std::invalid_argument("symbol degree must be >= 1");
  if (kmax < 0 || kmax > kMaxSeriesOrder)
    throw std::invalid_argument("kmax must satisfy 0 <= kmax <= 4");
  if (16.0 * std::abs(t) * model.qnorm >= 1.0)
    throw std::invalid_argument("time outside the convergence disk");

  SeriesReport rep;
  rep.p = a.p;
  rep.n = n;
  rep.kmax = kmax;
  rep.t = t;
  rep.c = c;

  double anorm = kernel_norm(a);

  // The bracket series expands tr[rho U* a^wick U] for U = e^{-i t H_n};
  // evolve() conjugates states with e^{+i t H_n}, so the matching evolved
  // state is evolve(rho, H_n, -t).
  Propagator prop(build_hamiltonian(model, n));
  DensityMatrix rho_t = prop.evolve(rho, -t);
  SectorMap a_block = wick_restrict(a, n, 1.0 / n);
  rep.reference = (rho_t.m() * a_block.m).trace();

  Complex sum = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    Complex term = quantum_series_term(k, rho, a, t, g, n, model);
    sum += term;
    rep.terms.push_back(term);
    rep.partial_sums.push_back(sum);
    rep.term_envelopes.push_back(
        series_term_envelope(a.p, k, t, model.qnorm, anorm));
  }
  rep.residual = std::abs(rep.reference - sum);
  rep.bound = prop3_constant(c) * std::pow(c, a.p) / n * anorm;
  // Tail of the term envelopes: envelope_k <= 2^{p-1} r^k with r = 8|t|qnorm,
  // summed over k > kmax.
  double r = 8.0 * std::abs(t) * model.qnorm;
  rep.truncation_tail = std::pow(2.0, a.p - 1) * anorm *
                        std::pow(r, kmax + 1) / (1.0 - r);
  rep.pass = rep.residual <= rep.bound + rep.truncation_tail;
  return rep;
}

}  // namespace mflab
