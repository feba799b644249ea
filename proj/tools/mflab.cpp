// mflab command-line driver: sweep | rdm | selftest | expansion.
// Exit codes: 0 success, 1 self-test failure, 2 config error, 3 numeric
// error.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mflab/bench.hpp"
#include "mflab/config.hpp"
#include "mflab/expansion.hpp"
#include "mflab/selftest.hpp"

namespace {

using namespace mflab;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  unsigned seed = 0;
};

RunConfig load_or_default(const CommonOpts& opts) {
  if (opts.config_path.empty()) return parse_config("{}");
  return load_config(opts.config_path);
}

int run_sweep_cmd(const CommonOpts& opts) {
  RunConfig cfg = load_or_default(opts);
  SweepPlan plan = cfg.plan(opts.threads);
  SweepResult result = run_sweep(plan);
  for (const auto& f : result.failures)
    std::cerr << "cell (n=" << f.n << ", p=" << f.p << ", t=" << f.t
              << ") failed: " << f.message << "\n";
  if (result.records.empty()) throw NumericError("every sweep cell failed");

  namespace fs = std::filesystem;
  fs::create_directories(opts.out_dir);
  const fs::path rates_path = fs::path(opts.out_dir) / cfg.output.rates;
  const fs::path slopes_path = fs::path(opts.out_dir) / cfg.output.slopes;

  std::ofstream rates(rates_path);
  if (!rates) throw ConfigError(rates_path.string(), "cannot open for writing");
  write_rates_csv(rates, result.records);

  std::vector<SlopeFit> fits;
  for (int p : plan.p_values) {
    try {
      fits.push_back(fit_slope(result.records, plan.family, p));
    } catch (const std::invalid_argument& e) {
      std::cerr << "p=" << p << ": no slope fit (" << e.what() << ")\n";
    }
  }
  std::ofstream slopes(slopes_path);
  if (!slopes)
    throw ConfigError(slopes_path.string(), "cannot open for writing");
  write_slopes_csv(slopes, fits);

  std::cout << result.records.size() << " cells -> " << rates_path.string()
            << "\n"
            << fits.size() << " fits -> " << slopes_path.string() << "\n";
  for (const auto& f : fits)
    std::printf("family=%s p=%d slope=%+.4f intercept=%+.4f residual=%.2e\n",
                f.family.c_str(), f.p, f.slope, f.intercept, f.residual);
  return 0;
}

int run_rdm_cmd(const CommonOpts& opts, int n, int p, double t) {
  RunConfig cfg = load_or_default(opts);
  SweepPlan plan = cfg.plan(opts.threads);
  PreparedState state = prepare_family(plan, n);

  DensityMatrix rho_t = state.rho;
  if (t != 0.0)  // e^{-itH} rho e^{+itH}: the state matching the flow at +t
    rho_t = Propagator(build_hamiltonian(plan.model, n)).evolve(state.rho, -t);
  DensityMatrix reduced = partial_trace(rho_t, p);
  DensityMatrix limit =
      limit_rdm(state.mu, p, t, plan.quad_points, plan.flow, plan.model);

  std::cout << "# evolved " << p << "-particle reduced matrix (n=" << n
            << ", t=" << t << ")\n";
  dump_matrix(std::cout, reduced.m());
  std::cout << "# limiting " << p << "-particle matrix\n";
  dump_matrix(std::cout, limit.m());
  SectorOperator diff = reduced.op;
  diff.m -= limit.m();
  std::printf("distance=%.17g\n", trace_norm(diff));
  return 0;
}

int run_selftest_cmd(const CommonOpts& opts) {
  SelftestReport report = run_selftests(opts.seed);
  print_report(std::cout, report);
  return report.all_pass() ? 0 : 1;
}

int run_expansion_cmd(const CommonOpts& opts, int n, int p, double t,
                      int kmax) {
  RunConfig cfg = load_or_default(opts);
  SweepPlan plan = cfg.plan(opts.threads);
  if (p != 1 && p != 2)
    throw std::invalid_argument("expansion observable needs p in {1,2}");
  PolySymbol a = p == 1 ? one_body_symbol(plan.model.h0)
                        : pair_symbol(plan.model.pair_kernel);
  if (kernel_norm(a) == 0.0)
    throw std::invalid_argument("model has a zero observable at this p");
  PreparedState state = prepare_family(plan, n);

  SeriesReport rep = prop3_check(state.rho, a, t, kmax, n, plan.model, 2.5,
                                 cfg.numerics.gauss_nodes);
  std::printf("p=%d n=%d t=%g kmax=%d c=%g\n", rep.p, rep.n, rep.t, rep.kmax,
              rep.c);
  for (std::size_t k = 0; k < rep.terms.size(); ++k)
    std::printf(
        "k=%zu term=(%+.10e, %+.10e) partial=(%+.10e, %+.10e) envelope=%.3e\n",
        k, rep.terms[k].real(), rep.terms[k].imag(),
        rep.partial_sums[k].real(), rep.partial_sums[k].imag(),
        rep.term_envelopes[k]);
  std::printf("reference=(%+.10e, %+.10e)\n", rep.reference.real(),
              rep.reference.imag());
  std::printf("residual=%.6e bound=%.6e tail=%.6e -> %s\n", rep.residual,
              rep.bound, rep.truncation_tail, rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean-field dynamics laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out", opts.out_dir, "output directory (default .)");
  app.add_option("--threads", opts.threads,
                 "worker threads, 0 = hardware concurrency")
      ->envname("MFLAB_THREADS");
  app.add_option("--seed", opts.seed, "seed for randomized self-tests");

  auto* sweep = app.add_subcommand("sweep", "run the (n, p, t) rate sweep");

  int n = 16, p = 1, kmax = 4;
  double t = 0.0;
  auto* rdm = app.add_subcommand(
      "rdm", "print one evolved reduced matrix, its limit and the distance");
  rdm->add_option("--n", n, "particle number")->required();
  rdm->add_option("--p", p, "reduced-matrix order")->required();
  rdm->add_option("--t", t, "time")->required();

  auto* selftest =
      app.add_subcommand("selftest", "run the randomized cross-check suites");

  auto* expansion = app.add_subcommand(
      "expansion", "time-ordered series vs the evolved expectation");
  expansion->add_option("--n", n, "particle number (default 16)");
  expansion->add_option("--p", p, "observable order, 1 or 2 (default 1)");
  expansion->add_option("--t", t, "time (default 0.1)")->default_val(0.1);
  expansion->add_option("--kmax", kmax, "truncation order (default 4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(opts);
    if (rdm->parsed()) return run_rdm_cmd(opts, n, p, t);
    if (selftest->parsed()) return run_selftest_cmd(opts);
    if (expansion->parsed()) return run_expansion_cmd(opts, n, p, t, kmax);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
