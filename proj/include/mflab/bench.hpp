// Convergence-rate laboratory: sweep (n, p, t) cells, measure trace-norm
// distances between evolved reduced density matrices and their mean-field
// limits, fit log-log rates, and verify the closed-form family bounds.
#ifndef MFLAB_BENCH_HPP
#define MFLAB_BENCH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mflab/quantum.hpp"

namespace mflab {

// How the mixture weight grows with n; fixed for the other families.
enum class AlphaRule { fixed, sqrt_n, linear_n };

struct SweepPlan {
  ModelSpec model;
  std::string family;              // product | w | ghz | twin | mixture
  std::vector<Vector> generators;  // 1 or 2 orthonormal vectors
  double alpha = 2.0;
  AlphaRule alpha_rule = AlphaRule::fixed;
  std::vector<int> n_values;
  std::vector<int> p_values;
  std::vector<double> times;
  FlowConfig flow;
  int quad_points = 64;
  int threads = 1;  // 0 = hardware concurrency
};

struct RateRecord {
  std::string family;
  int n = 0;
  int p = 0;
  double t = 0.0;
  double distance = 0.0;
};

struct CellFailure {
  int n = 0;
  int p = 0;
  double t = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<RateRecord> records;  // sorted by (family, n, p, t)
  std::vector<CellFailure> failures;
};

double alpha_for(const SweepPlan& plan, int n);
PreparedState prepare_family(const SweepPlan& plan, int n);

/// Evaluate every (n, p, t) cell of the plan; failed cells are reported and
/// skipped, the sweep continues.
SweepResult run_sweep(const SweepPlan& plan);

struct SlopeFit {
  std::string family;
  int p = 0;
  double slope = 0.0;
  double intercept = 0.0;  // natural-log units
  double residual = 0.0;   // rms residual of the fit
  int points_used = 0;
  std::vector<int> excluded_n;  // n whose sup-distance was zero
};

// Least-squares fit of log(sup_t distance) against log n for one p.
// Zero-distance n are excluded (and listed); needs >= 3 surviving points.
SlopeFit fit_slope(const std::vector<RateRecord>& records,
                   const std::string& family, int p);

struct BoundCell {
  int n = 0;
  int p = 0;
  double t = 0.0;
  double distance = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BoundsReport {
  std::vector<BoundCell> cells;  // cells with an applicable closed form
  double envelope = 0.0;         // max over all cells of distance*alpha(n)/C^p
  double envelope_c = 2.5;
  bool all_pass = true;
};

// Closed-form distance bounds at t = 0 (exact families are checked for
// equality); every cell feeds the measured rate envelope.
BoundsReport verify_bounds(const SweepResult& result, const SweepPlan& plan);

void write_rates_csv(std::ostream& os, const std::vector<RateRecord>& records);
void write_slopes_csv(std::ostream& os, const std::vector<SlopeFit>& fits);

}  // namespace mflab

#endif  // MFLAB_BENCH_HPP
