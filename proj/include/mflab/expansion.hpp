// Time-ordered bracket expansion of evolved polynomial observables, on the
// quantum side (traces against a many-body state) and the classical side
// (integrals against a limiting measure), with the explicit constants that
// control truncation and the 1/n comparison residual.
#ifndef MFLAB_EXPANSION_HPP
#define MFLAB_EXPANSION_HPP

#include <utility>
#include <vector>

#include "mflab/quantum.hpp"
#include "mflab/wickcalc.hpp"

namespace mflab {

/// Gauss-Legendre nodes and weights on [0,1].
std::pair<RealVector, RealVector> gauss_legendre(int g);

/// Free-rotated symbol b_t: kernel conjugated by the sym powers of e^{i t h0}.
PolySymbol heisenberg_symbol(const PolySymbol& b, double t,
                             const ModelSpec& model);

/// The interaction symbol at time t (free rotation of the pair kernel).
PolySymbol interaction_symbol(const ModelSpec& model, double t);

// Iterated bracket C^(m)(s_m,...,s_1, t): the base observable rotated to
// time t, wrapped in first-order brackets with the interaction symbol at
// s_1, then s_2, ..., then s_m (s_m outermost). times is ordered
// (s_m, ..., s_1).
struct BracketTermRequest {
  PolySymbol base;
  std::vector<double> times;
  double t = 0.0;
};

PolySymbol c0_symbol(const BracketTermRequest& req, const ModelSpec& model);

// Term k of the quantum-side expansion: i^k times the k-fold simplex
// integral over 0 <= s_k <= ... <= s_1 <= t of tr[rho C^(k)(s_k..s_1,t)^wick]
// at scale eps = 1/n, by nested Gauss-Legendre with g nodes per level.
// k <= 4 (cost grows like g^k).
Complex quantum_series_term(int k, const DensityMatrix& rho,
                            const PolySymbol& a, double t, int g, int n,
                            const ModelSpec& model);

// Classical counterpart: the same integral with the trace replaced by the
// measure pairing, sampled on quad_points relative-phase nodes.
Complex classical_series_term(int k, const WignerMeasureSpec& mu,
                              const PolySymbol& a, double t, int g,
                              int quad_points, const ModelSpec& model);

/// max over p >= 1 of 2^p (3 + p^2) / c^p; requires c > 2.
double prop3_constant(double c);

/// Norm bound for the m-fold iterated first-order bracket kernel:
/// 4^m (p+m-1)!/(p-1)! qnorm^m bnorm.
double bracket_kernel_bound(int p, int m, double qnorm, double bnorm);

/// Norm bound for the second-order bracket with the interaction symbol:
/// 4 p (p-1) qnorm bnorm.
double pair_bracket_bound(int p, double qnorm, double bnorm);

/// Envelope for series term k: 4^k C(p+k-1, k) (|t| qnorm)^k anorm.
double series_term_envelope(int p, int k, double t, double qnorm,
                            double anorm);

struct SeriesReport {
  int p = 0;
  int n = 0;
  int kmax = 0;
  double t = 0.0;
  double c = 0.0;
  std::vector<Complex> terms;
  std::vector<Complex> partial_sums;
  std::vector<double> term_envelopes;
  Complex reference;             // evolved quantum expectation
  double residual = 0.0;         // |reference - partial_sums.back()|
  double bound = 0.0;            // prop3_constant(c) c^p / n * anorm
  double truncation_tail = 0.0;  // geometric tail of the term envelopes
  bool pass = false;             // residual <= bound + truncation_tail
};

// Compare the evolved expectation tr[rho_n(t) a^wick] against the series
// truncated at kmax. Requires a square symbol (p == q), c > 2 and
// 16 |t| qnorm < 1.
SeriesReport prop3_check(const DensityMatrix& rho, const PolySymbol& a,
                         double t, int kmax, int n, const ModelSpec& model,
                         double c = 2.5, int g = 8);

}  // namespace mflab

#endif  // MFLAB_EXPANSION_HPP
