// Randomized cross-check suites runnable from the CLI: each check compares
// two independent computation routes and records the observed error against
// a pinned tolerance.
#ifndef MFLAB_SELFTEST_HPP
#define MFLAB_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mflab {

struct SelftestCheck {
  std::string suite;
  std::string name;
  double error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;

  bool all_pass() const;
  int failures() const;
};

// Suites: wick-composition, partial-trace-duality, hartree-invariants,
// normalization-identity. The seed drives every random draw.
SelftestReport run_selftests(unsigned seed);

void print_report(std::ostream& os, const SelftestReport& report);

}  // namespace mflab

#endif  // MFLAB_SELFTEST_HPP
