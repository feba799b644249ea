#include "mflab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace mflab {

namespace {

void append_csv_value(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

double alpha_for(const SweepPlan& plan, int n) {
  switch (plan.alpha_rule) {
    case AlphaRule::sqrt_n:
      return std::sqrt(double(n));
    case AlphaRule::linear_n:
      return double(n);
    default:
      return plan.alpha;
  }
}

PreparedState prepare_family(const SweepPlan& plan, int n) {
  const auto& g = plan.generators;
  if (plan.family == "product") {
    if (g.size() != 1)
      throw std::invalid_argument("product family needs one generator");
    return product_state(g[0], n);
  }
  if (plan.family == "w") {
    if (g.size() != 2)
      throw std::invalid_argument("w family needs two generators");
    return w_state(g[0], g[1], n);
  }
  if (plan.family == "ghz") {
    if (g.size() != 2)
      throw std::invalid_argument("ghz family needs two generators");
    return ghz_state(g[0], g[1], n);
  }
  if (plan.family == "twin") {
    if (g.size() != 2)
      throw std::invalid_argument("twin family needs two generators");
    return twin_state(g[0], g[1], n);
  }
  if (plan.family == "mixture") {
    if (g.size() != 2)
      throw std::invalid_argument("mixture family needs two generators");
    return mixture_state(g[0], g[1], alpha_for(plan, n), n);
  }
  throw std::invalid_argument("unknown family: " + plan.family);
}

SweepResult run_sweep(const SweepPlan& plan) {
  if (plan.n_values.empty() || plan.p_values.empty() || plan.times.empty())
    throw std::invalid_argument("sweep plan has an empty axis");
  for (int p : plan.p_values)
    if (p < 1) throw std::invalid_argument("p values must be >= 1");

  SweepResult result;
  std::mutex merge_mutex;

  auto run_one_n = [&](int n) {
    std::vector<RateRecord> records;
    std::vector<CellFailure> failures;
    try {
      PreparedState state = prepare_family(plan, n);
      Propagator prop(build_hamiltonian(plan.model, n));
      for (double t : plan.times) {
        // evolve() conjugates with e^{+itH}; the state whose reduced
        // matrices track the flow at +t is e^{-itH} rho e^{+itH}.
        DensityMatrix rho_t =
            (t == 0.0) ? state.rho : prop.evolve(state.rho, -t);
        for (int p : plan.p_values) {
          try {
            if (p > n)
              throw std::invalid_argument("p exceeds the particle count");
            DensityMatrix reduced = partial_trace(rho_t, p);
            DensityMatrix limit = limit_rdm(state.mu, p, t, plan.quad_points,
                                            plan.flow, plan.model);
            SectorOperator diff{p, plan.model.d, reduced.m() - limit.m()};
            records.push_back(
                RateRecord{plan.family, n, p, t, trace_norm(diff)});
          } catch (const std::exception& e) {
            failures.push_back(CellFailure{n, p, t, e.what()});
          }
        }
      }
    } catch (const std::exception& e) {
      failures.push_back(CellFailure{n, 0, 0.0, e.what()});
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    result.records.insert(result.records.end(), records.begin(),
                          records.end());
    result.failures.insert(result.failures.end(), failures.begin(),
                           failures.end());
  };

  int threads = plan.threads;
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || plan.n_values.size() == 1) {
    for (int n : plan.n_values) run_one_n(n);
  } else {
    std::vector<std::thread> pool;
    std::mutex queue_mutex;
    size_t next = 0;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&]() {
        while (true) {
          size_t mine;
          {
            std::lock_guard<std::mutex> lock(queue_mutex);
            if (next >= plan.n_values.size()) return;
            mine = next++;
          }
          run_one_n(plan.n_values[mine]);
        }
      });
    for (auto& th : pool) th.join();
  }

  auto key = [](const RateRecord& r) {
    return std::make_tuple(r.family, r.n, r.p, r.t);
  };
  std::sort(result.records.begin(), result.records.end(),
            [&](const RateRecord& a, const RateRecord& b) {
              return key(a) < key(b);
            });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const CellFailure& a, const CellFailure& b) {
              return std::tie(a.n, a.p, a.t) < std::tie(b.n, b.p, b.t);
            });
  return result;
}

SlopeFit fit_slope(const std::vector<RateRecord>& records,
                   const std::string& family, int p) {
  // sup over the time grid per n
  std::vector<std::pair<int, double>> sup;
  for (const auto& r : records) {
    if (r.family != family || r.p != p) continue;
    auto it = std::find_if(sup.begin(), sup.end(),
                           [&](const auto& s) { return s.first == r.n; });
    if (it == sup.end())
      sup.emplace_back(r.n, r.distance);
    else
      it->second = std::max(it->second, r.distance);
  }
  if (sup.empty()) throw std::invalid_argument("no records for this (family, p)");

  SlopeFit fit;
  fit.family = family;
  fit.p = p;
  std::vector<double> xs, ys;
  for (const auto& [n, dist] : sup) {
    if (dist <= 0.0) {
      fit.excluded_n.push_back(n);
      continue;
    }
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(dist));
  }
  if (xs.size() < 3)
    throw std::invalid_argument(
        "slope fit needs >= 3 n values with nonzero distance");

  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / xs.size());
  fit.points_used = static_cast<int>(xs.size());
  return fit;
}

BoundsReport verify_bounds(const SweepResult& result, const SweepPlan& plan) {
  BoundsReport report;
  for (const auto& r : result.records) {
    double alpha = (plan.family == "mixture") ? alpha_for(plan, r.n)
                                              : double(r.n);
    report.envelope =
        std::max(report.envelope, r.distance * alpha /
                                      std::pow(report.envelope_c, r.p));
    if (r.t != 0.0) continue;
    std::optional<double> bound;
    bool equality = false;
    if (plan.family == "w") {
      bound = 2.0 * r.p / r.n;
      equality = (r.p == 1);
    } else if (plan.family == "twin" && r.n >= 2 * r.p) {
      bound = std::pow(2.0, r.p) * r.p * r.p / double(r.n - r.p);
    } else if (plan.family == "mixture") {
      bound = 2.0 / alpha_for(plan, r.n);
      equality = true;
    } else if (plan.family == "ghz" && r.p < r.n) {
      bound = 0.0;
      equality = true;
    } else if (plan.family == "product") {
      bound = 0.0;
      equality = true;
    }
    if (!bound) continue;
    BoundCell cell{r.n, r.p, r.t, r.distance, *bound, false};
    cell.pass = equality ? std::abs(r.distance - *bound) <= 1e-12
                         : r.distance <= *bound + 1e-12;
    report.all_pass = report.all_pass && cell.pass;
    report.cells.push_back(cell);
  }
  return report;
}

void write_rates_csv(std::ostream& os,
                     const std::vector<RateRecord>& records) {
  os << "family,n,p,t,distance\n";
  for (const auto& r : records) {
    std::string line = r.family;
    line += ',';
    line += std::to_string(r.n);
    line += ',';
    line += std::to_string(r.p);
    line += ',';
    append_csv_value(line, r.t);
    line += ',';
    append_csv_value(line, r.distance);
    line += '\n';
    os << line;
  }
}

void write_slopes_csv(std::ostream& os, const std::vector<SlopeFit>& fits) {
  os << "family,p,slope,intercept,residual\n";
  for (const auto& f : fits) {
    std::string line = f.family;
    line += ',';
    line += std::to_string(f.p);
    line += ',';
    append_csv_value(line, f.slope);
    line += ',';
    append_csv_value(line, f.intercept);
    line += ',';
    append_csv_value(line, f.residual);
    line += '\n';
    os << line;
  }
}

}  // namespace mflab
