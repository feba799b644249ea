// JSON run configuration: model, state family, sweep axes, numerics and
// output paths. Parsing is strict — unknown keys are rejected with their
// path — and complex numbers are written as [re, im] pairs.
#ifndef MFLAB_CONFIG_HPP
#define MFLAB_CONFIG_HPP

#include <string>
#include <vector>

#include "mflab/bench.hpp"

namespace mflab {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path(path) {}
  std::string path;
};

struct NumericsConfig {
  double dt = 1e-3;
  int quad_points = 64;
  int gauss_nodes = 8;
  int kmax = 4;
};

struct OutputConfig {
  std::string rates = "rates.csv";
  std::string slopes = "slopes.csv";
};

struct RunConfig {
  ModelSpec model;
  std::string family;
  std::vector<Vector> generators;
  double alpha = 2.0;
  AlphaRule alpha_rule = AlphaRule::fixed;
  std::vector<int> n_values = {8, 16, 32, 64, 128};
  std::vector<int> p_values = {1, 2};
  std::vector<double> times = {0.1, 0.2, 0.3, 0.4, 0.5,
                               0.6, 0.7, 0.8, 0.9, 1.0};
  NumericsConfig numerics;
  OutputConfig output;

  SweepPlan plan(int threads = 1) const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);
std::string dump_config(const RunConfig& cfg);

}  // namespace mflab

#endif  // MFLAB_CONFIG_HPP
