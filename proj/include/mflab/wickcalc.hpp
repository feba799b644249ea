// Polynomial symbols in z/zbar with kernels stored on symmetric-sector bases,
// their contractions and Poisson brackets, and quantization to sector
// operators (normal-ordered, with the mean-field scale eps).
#ifndef MFLAB_WICKCALC_HPP
#define MFLAB_WICKCALC_HPP

#include <vector>

#include "mflab/symspace.hpp"

namespace mflab {

// Homogeneous symbol b(z) = <z^(x)q, K z^(x)p> with kernel K mapping the
// p-particle sector into the q-particle sector (dim_q x dim_p matrix).
struct PolySymbol {
  int p = 0;
  int q = 0;
  int d = 0;
  Matrix kernel;

  static PolySymbol zero(int p, int q, int d);
};

PolySymbol operator+(const PolySymbol& a, const PolySymbol& b);
PolySymbol operator-(const PolySymbol& a, const PolySymbol& b);
PolySymbol operator*(Complex c, const PolySymbol& a);

/// Symbol <z, h z> of a one-particle operator.
PolySymbol one_body_symbol(const Matrix& h);
/// Symbol <z^(x)2, K z^(x)2> of a two-particle sector kernel.
PolySymbol pair_symbol(const SectorOperator& k2);
/// Symbol <z^(x)p, K z^(x)p> of a p-particle sector kernel.
PolySymbol sector_symbol(const SectorOperator& kp);

/// Operator norm of the kernel.
double kernel_norm(const PolySymbol& b);

/// b(z); defined for any vector, not just unit ones.
Complex evaluate(const PolySymbol& b, const Vector& z);

// k-fold contraction of the holomorphic derivatives of b1 against the
// antiholomorphic derivatives of b2; a homogeneous symbol of bidegree
// (p1+p2-k, q1+q2-k). Requires 0 <= k <= min(p1, q2).
PolySymbol contract(const PolySymbol& b1, const PolySymbol& b2, int k);

// Antisymmetrized contraction {b1,b2}^(k); out-of-range contractions count
// as zero, so k may run up to max(min(p1,q2), min(p2,q1)).
PolySymbol poisson(const PolySymbol& b1, const PolySymbol& b2, int k);

// Rectangular block of a quantized symbol between two sectors.
struct SectorMap {
  int d = 0;
  int n_from = 0;
  int n_to = 0;
  Matrix m;
};

SectorOperator to_sector_operator(const SectorMap& block);

// Restriction of the normal-ordered quantization of b to the n-particle
// sector: maps sector n to sector n-p+q, zero when n < p. eps > 0 is the
// semiclassical scale (1/n in the mean-field pairing).
SectorMap wick_restrict(const PolySymbol& b, int n, double eps);

// Term of a symbol expansion carrying an explicit power of eps.
struct GradedTerm {
  int eps_power = 0;
  PolySymbol symbol;
};
using GradedSymbolSum = std::vector<GradedTerm>;

// Symbol expansion of the operator product b1^wick b2^wick: term k carries
// eps^k and symbol contract(b1,b2,k)/k!, k = 0..min(p1,q2).
GradedSymbolSum compose_symbols(const PolySymbol& b1, const PolySymbol& b2);

// Symbol expansion of the commutator [b1^wick, b2^wick]: term k carries
// eps^k and symbol poisson(b1,b2,k)/k!, k >= 1.
GradedSymbolSum commutator_symbols(const PolySymbol& b1, const PolySymbol& b2);

/// Quantize a graded sum on sector n at scale eps (folds in the eps powers).
SectorMap quantize(const GradedSymbolSum& sum, int n, double eps);

}  // namespace mflab

#endif  // MFLAB_WICKCALC_HPP
