#include "mflab/wickcalc.hpp"

#include <cmath>

namespace mflab {

namespace {

void check_same_space(const PolySymbol& a, const PolySymbol& b) {
  if (a.d != b.d)
    throw std::invalid_argument("symbols live over different mode counts");
}

void check_shape(const PolySymbol& b) {
  const auto& rows = OccupationBasis::get(b.q, b.d);
  const auto& cols = OccupationBasis::get(b.p, b.d);
  if (b.kernel.rows() != rows.dim() || b.kernel.cols() != cols.dim())
    throw std::invalid_argument("symbol kernel has wrong dimensions");
}

double falling(int a, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= (a - j);
  return r;
}

}  // namespace

PolySymbol PolySymbol::zero(int p, int q, int d) {
  if (p < 0 || q < 0) throw std::invalid_argument("symbol degrees must be >= 0");
  int rows = OccupationBasis::get(q, d).dim();
  int cols = OccupationBasis::get(p, d).dim();
  return PolySymbol{p, q, d, Matrix::Zero(rows, cols)};
}

PolySymbol operator+(const PolySymbol& a, const PolySymbol& b) {
  check_same_space(a, b);
  if (a.p != b.p || a.q != b.q)
    throw std::invalid_argument("cannot add symbols of different bidegree");
  return PolySymbol{a.p, a.q, a.d, a.kernel + b.kernel};
}

PolySymbol operator-(const PolySymbol& a, const PolySymbol& b) {
  check_same_space(a, b);
  if (a.p != b.p || a.q != b.q)
    throw std::invalid_argument("cannot subtract symbols of different bidegree");
  return PolySymbol{a.p, a.q, a.d, a.kernel - b.kernel};
}

PolySymbol operator*(Complex c, const PolySymbol& a) {
  return PolySymbol{a.p, a.q, a.d, c * a.kernel};
}

PolySymbol one_body_symbol(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix must be square");
  return PolySymbol{1, 1, static_cast<int>(h.rows()), h};
}

PolySymbol pair_symbol(const SectorOperator& k2) {
  if (k2.n != 2)
    throw std::invalid_argument("pair symbol needs a 2-sector kernel");
  return PolySymbol{2, 2, k2.d, k2.m};
}

PolySymbol sector_symbol(const SectorOperator& kp) {
  return PolySymbol{kp.n, kp.n, kp.d, kp.m};
}

double kernel_norm(const PolySymbol& b) { return operator_norm(b.kernel); }

Complex evaluate(const PolySymbol& b, const Vector& z) {
  if (static_cast<int>(z.size()) != b.d)
    throw std::invalid_argument("argument has wrong dimension");
  check_shape(b);
  Vector bra = power_amplitudes(z, b.q);
  Vector ket = power_amplitudes(z, b.p);
  return bra.dot(b.kernel * ket);
}

PolySymbol contract(const PolySymbol& b1, const PolySymbol& b2, int k) {
  check_same_space(b1, b2);
  check_shape(b1);
  check_shape(b2);
  if (k < 0 || k > std::min(b1.p, b2.q))
    throw std::invalid_argument("contraction order out of range");
  int d = b1.d;
  int P = b1.p + b2.p - k;
  int Q = b1.q + b2.q - k;
  PolySymbol out = PolySymbol::zero(P, Q, d);

  const auto& in_basis = OccupationBasis::get(P, d);
  const auto& out_basis = OccupationBasis::get(Q, d);
  const auto& pass_in = OccupationBasis::get(b1.p - k, d);   // untouched input legs
  const auto& mid = OccupationBasis::get(b2.q, d);           // output of b2
  const auto& hook = OccupationBasis::get(k, d);             // legs consumed by b1
  const auto& b1_in = OccupationBasis::get(b1.p, d);
  const auto& b1_out = OccupationBasis::get(b1.q, d);
  const auto& b2_in = OccupationBasis::get(b2.p, d);

  double nk = falling(b1.p, k) * falling(b2.q, k);

  Occupation tail(d), merged(d), target(d);
  for (int col = 0; col < in_basis.dim(); ++col) {
    const Occupation& nu = in_basis.state(col);
    for (int s = 0; s < pass_in.dim(); ++s) {
      const Occupation& sigma = pass_in.state(s);
      bool fits = true;
      for (int j = 0; j < d; ++j) {
        tail[j] = nu[j] - sigma[j];
        if (tail[j] < 0) fits = false;
      }
      if (!fits) continue;
      double beta1 = split_amplitude(nu, sigma);
      int b2_col = b2_in.index(tail);
      for (int m = 0; m < mid.dim(); ++m) {
        Complex v2 = b2.kernel(m, b2_col);
        if (v2 == Complex(0)) continue;
        const Occupation& mu = mid.state(m);
        for (int h = 0; h < hook.dim(); ++h) {
          const Occupation& kappa = hook.state(h);
          bool inside = true;
          for (int j = 0; j < d; ++j)
            if (kappa[j] > mu[j]) inside = false;
          if (!inside) continue;
          double beta2 = split_amplitude(mu, kappa);
          for (int j = 0; j < d; ++j) merged[j] = sigma[j] + kappa[j];
          double beta3 = split_amplitude(merged, sigma);
          int b1_col = b1_in.index(merged);
          double common = nk * beta1 * beta2 * beta3;
          for (int l = 0; l < b1_out.dim(); ++l) {
            Complex v1 = b1.kernel(l, b1_col);
            if (v1 == Complex(0)) continue;
            const Occupation& lambda = b1_out.state(l);
            for (int j = 0; j < d; ++j)
              target[j] = lambda[j] + mu[j] - kappa[j];
            double beta4 = split_amplitude(target, lambda);
            out.kernel(out_basis.index(target), col) +=
                common * beta4 * v1 * v2;
          }
        }
      }
    }
  }
  return out;
}

PolySymbol poisson(const PolySymbol& b1, const PolySymbol& b2, int k) {
  check_same_space(b1, b2);
  if (k < 0) throw std::invalid_argument("bracket order must be >= 0");
  int P = b1.p + b2.p - k;
  int Q = b1.q + b2.q - k;
  if (P < 0 || Q < 0)
    throw std::invalid_argument("bracket order exceeds symbol degrees");
  PolySymbol out = PolySymbol::zero(P, Q, b1.d);
  if (k <= std::min(b1.p, b2.q)) out = out + contract(b1, b2, k);
  if (k <= std::min(b2.p, b1.q)) out = out - contract(b2, b1, k);
  return out;
}

SectorOperator to_sector_operator(const SectorMap& block) {
  if (block.n_from != block.n_to)
    throw std::invalid_argument("block is not sector-diagonal");
  return SectorOperator{block.n_from, block.d, block.m};
}

SectorMap wick_restrict(const PolySymbol& b, int n, double eps) {
  check_shape(b);
  if (n < 0) throw std::invalid_argument("particle count must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  int d = b.d;
  int m = n - b.p + b.q;
  if (n < b.p) {
    // Below the annihilation degree the quantization vanishes; keep a shaped
    // zero block so callers can still compose.
    int to = std::max(m, 0);
    return SectorMap{d, n, to,
                     Matrix::Zero(OccupationBasis::get(to, d).dim(),
                                  OccupationBasis::get(n, d).dim())};
  }

  const auto& in_basis = OccupationBasis::get(n, d);
  const auto& out_basis = OccupationBasis::get(m, d);
  const auto& low = OccupationBasis::get(b.p, d);
  const auto& high = OccupationBasis::get(b.q, d);

  // sqrt(n! m!)/(n-p)! = sqrt(prod_{n-p<j<=n} j) * sqrt(prod_{n-p<j<=m} j),
  // computed multiplicatively so the factor is exact for desk-scale sizes.
  double prod_in = 1.0, prod_out = 1.0;
  for (int j = n - b.p + 1; j <= n; ++j) prod_in *= j;
  for (int j = n - b.p + 1; j <= m; ++j) prod_out *= j;
  double scale =
      std::sqrt(prod_in) * std::sqrt(prod_out) * std::pow(eps, 0.5 * (b.p + b.q));

  SectorMap out{d, n, m, Matrix::Zero(out_basis.dim(), in_basis.dim())};
  Occupation tail(d), target(d);
  for (int col = 0; col < in_basis.dim(); ++col) {
    const Occupation& nu = in_basis.state(col);
    for (int s = 0; s < low.dim(); ++s) {
      const Occupation& sigma = low.state(s);
      bool fits = true;
      for (int j = 0; j < d; ++j) {
        tail[j] = nu[j] - sigma[j];
        if (tail[j] < 0) fits = false;
      }
      if (!fits) continue;
      double beta1 = split_amplitude(nu, sigma);
      for (int l = 0; l < high.dim(); ++l) {
        Complex v = b.kernel(l, s);
        if (v == Complex(0)) continue;
        const Occupation& lambda = high.state(l);
        for (int j = 0; j < d; ++j) target[j] = lambda[j] + tail[j];
        double beta2 = split_amplitude(target, lambda);
        out.m(out_basis.index(target), col) += scale * beta1 * beta2 * v;
      }
    }
  }
  return out;
}

GradedSymbolSum compose_symbols(const PolySymbol& b1, const PolySymbol& b2) {
  GradedSymbolSum sum;
  for (int k = 0; k <= std::min(b1.p, b2.q); ++k) {
    Complex coeff(1.0 / factorial(k), 0.0);
    sum.push_back(GradedTerm{k, coeff * contract(b1, b2, k)});
  }
  return sum;
}

GradedSymbolSum commutator_symbols(const PolySymbol& b1, const PolySymbol& b2) {
  GradedSymbolSum sum;
  int kmax = std::max(std::min(b1.p, b2.q), std::min(b2.p, b1.q));
  for (int k = 1; k <= kmax; ++k) {
    Complex coeff(1.0 / factorial(k), 0.0);
    sum.push_back(GradedTerm{k, coeff * poisson(b1, b2, k)});
  }
  return sum;
}

SectorMap quantize(const GradedSymbolSum& sum, int n, double eps) {
  if (sum.empty()) throw std::invalid_argument("empty graded sum");
  SectorMap total = wick_restrict(sum.front().symbol, n, eps);
  total.m *= std::pow(eps, sum.front().eps_power);
  for (size_t i = 1; i < sum.size(); ++i) {
    SectorMap term = wick_restrict(sum[i].symbol, n, eps);
    if (term.n_to != total.n_to || term.n_from != total.n_from)
      throw std::invalid_argument("graded sum mixes sector shapes");
    total.m += std::pow(eps, sum[i].eps_power) * term.m;
  }
  return total;
}

}  // namespace mflab
