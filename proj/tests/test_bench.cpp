#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mflab/bench.hpp"

using namespace mflab;

namespace {

SweepPlan small_product_plan() {
  SweepPlan plan;
  plan.model = dimer_model();
  plan.family = "product";
  plan.generators = {Vector(Vector::Unit(2, 0))};
  plan.n_values = {2, 3, 4, 5};
  plan.p_values = {1};
  plan.times = {0.0, 0.2};
  return plan;
}

std::string rates_csv(const SweepResult& result) {
  std::ostringstream os;
  write_rates_csv(os, result.records);
  return os.str();
}

}  // namespace

TEST_CASE("alpha rules") {
  SweepPlan plan;
  plan.alpha = 7.5;
  plan.alpha_rule = AlphaRule::fixed;
  CHECK(alpha_for(plan, 64) == 7.5);
  plan.alpha_rule = AlphaRule::sqrt_n;
  CHECK(alpha_for(plan, 64) == 8.0);
  plan.alpha_rule = AlphaRule::linear_n;
  CHECK(alpha_for(plan, 64) == 64.0);
}

TEST_CASE("family preparation and its guard rails") {
  SweepPlan plan = small_product_plan();
  PreparedState st = prepare_family(plan, 6);
  CHECK(st.family == "product");
  CHECK(st.n == 6);

  plan.family = "twin";
  CHECK_THROWS_AS(prepare_family(plan, 6), std::invalid_argument);
  plan.generators = {Vector(Vector::Unit(2, 0)), Vector(Vector::Unit(2, 1))};
  CHECK(prepare_family(plan, 6).family == "twin");

  plan.family = "no-such-family";
  CHECK_THROWS_AS(prepare_family(plan, 6), std::invalid_argument);
}

TEST_CASE("slope fitting on synthetic power laws") {
  auto make = [](int n, double dist) {
    return RateRecord{"product", n, 1, 0.1, dist};
  };
  std::vector<RateRecord> records;
  for (int n : {4, 8, 16, 32}) records.push_back(make(n, 3.0 / n));
  SlopeFit fit = fit_slope(records, "product", 1);
  CHECK(std::abs(fit.slope + 1.0) < 1e-12);
  CHECK(std::abs(fit.intercept - std::log(3.0)) < 1e-12);
  CHECK(fit.residual < 1e-12);
  CHECK(fit.points_used == 4);

  records.clear();
  for (int n : {4, 8, 16, 32})
    records.push_back(make(n, 2.0 / std::sqrt(double(n))));
  fit = fit_slope(records, "product", 1);
  CHECK(std::abs(fit.slope + 0.5) < 1e-12);

  // the fit takes the sup over the time grid within each n
  records.clear();
  for (int n : {4, 8, 16}) {
    records.push_back(RateRecord{"product", n, 1, 0.1, 1.0 / n});
    records.push_back(RateRecord{"product", n, 1, 0.5, 2.0 / n});
  }
  fit = fit_slope(records, "product", 1);
  CHECK(std::abs(fit.slope + 1.0) < 1e-12);
  CHECK(std::abs(fit.intercept - std::log(2.0)) < 1e-12);

  // zero-distance n are excluded and reported
  records.push_back(RateRecord{"product", 32, 1, 0.1, 0.0});
  fit = fit_slope(records, "product", 1);
  CHECK(fit.points_used == 3);
  REQUIRE(fit.excluded_n.size() == 1);
  CHECK(fit.excluded_n[0] == 32);

  CHECK_THROWS_AS(fit_slope(records, "twin", 1), std::invalid_argument);
  std::vector<RateRecord> too_few = {make(4, 0.5), make(8, 0.25)};
  CHECK_THROWS_AS(fit_slope(too_few, "product", 1), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  SweepPlan plan = small_product_plan();
  SweepResult first = run_sweep(plan);
  SweepResult second = run_sweep(plan);
  CHECK(rates_csv(first) == rates_csv(second));

  plan.threads = 4;
  SweepResult parallel = run_sweep(plan);
  CHECK(rates_csv(first) == rates_csv(parallel));

  plan.threads = 0;  // hardware concurrency
  SweepResult autothreads = run_sweep(plan);
  CHECK(rates_csv(first) == rates_csv(autothreads));

  REQUIRE(first.records.size() ==
          plan.n_values.size() * plan.times.size());
  CHECK(first.failures.empty());
}

TEST_CASE("sweep distances are symmetric under time reversal") {
  SweepPlan forward = small_product_plan();
  forward.times = {0.3};
  SweepPlan backward = forward;
  backward.times = {-0.3};
  SweepResult f = run_sweep(forward);
  SweepResult b = run_sweep(backward);
  REQUIRE(f.records.size() == b.records.size());
  for (std::size_t i = 0; i < f.records.size(); ++i)
    CHECK(std::abs(f.records[i].distance - b.records[i].distance) < 1e-10);
}

TEST_CASE("failed cells are reported and the sweep continues") {
  SweepPlan plan = small_product_plan();
  plan.n_values = {2, 6};
  plan.p_values = {1, 4};  // p = 4 exceeds n = 2
  SweepResult result = run_sweep(plan);
  REQUIRE(result.failures.size() == plan.times.size());
  for (const auto& f : result.failures) {
    CHECK(f.n == 2);
    CHECK(f.p == 4);
    CHECK(!f.message.empty());
  }
  // all other cells were still measured
  CHECK(result.records.size() ==
        plan.n_values.size() * plan.p_values.size() * plan.times.size() -
            result.failures.size());

  SweepPlan empty = plan;
  empty.n_values.clear();
  CHECK_THROWS_AS(run_sweep(empty), std::invalid_argument);
}

TEST_CASE("closed-form bounds at t = 0 across the families") {
  SweepPlan plan = small_product_plan();
  plan.generators = {Vector(Vector::Unit(2, 0)), Vector(Vector::Unit(2, 1))};
  plan.times = {0.0};
  plan.p_values = {1, 2};

  plan.family = "w";
  plan.n_values = {4, 8, 16};
  SweepResult w = run_sweep(plan);
  BoundsReport wr = verify_bounds(w, plan);
  CHECK(wr.all_pass);
  CHECK(wr.cells.size() == w.records.size());
  for (const auto& cell : wr.cells)
    if (cell.p == 1) CHECK(cell.bound == 2.0 / cell.n);

  plan.family = "twin";
  plan.n_values = {6, 8, 10};
  BoundsReport tr = verify_bounds(run_sweep(plan), plan);
  CHECK(tr.all_pass);

  plan.family = "ghz";
  BoundsReport gr = verify_bounds(run_sweep(plan), plan);
  CHECK(gr.all_pass);
  for (const auto& cell : gr.cells) CHECK(cell.bound == 0.0);

  plan.family = "mixture";
  plan.alpha = 4.0;
  BoundsReport mr = verify_bounds(run_sweep(plan), plan);
  CHECK(mr.all_pass);
  for (const auto& cell : mr.cells) {
    CHECK(cell.bound == 0.5);
    CHECK(std::abs(cell.distance - 0.5) <= 1e-12);
  }

  plan.alpha_rule = AlphaRule::sqrt_n;
  plan.n_values = {16, 25, 36};
  BoundsReport sr = verify_bounds(run_sweep(plan), plan);
  CHECK(sr.all_pass);
  for (const auto& cell : sr.cells)
    CHECK(std::abs(cell.distance - 2.0 / std::sqrt(double(cell.n))) <= 1e-12);
}

TEST_CASE("csv writers emit stable headers and full precision") {
  std::vector<RateRecord> records = {
      RateRecord{"product", 8, 1, 0.25, 1.0 / 3.0}};
  std::ostringstream os;
  write_rates_csv(os, records);
  CHECK(os.str() ==
        "family,n,p,t,distance\n"
        "product,8,1,0.25,0.33333333333333331\n");

  SlopeFit fit;
  fit.family = "product";
  fit.p = 1;
  fit.slope = -1.0;
  fit.intercept = 0.5;
  fit.residual = 0.0;
  std::ostringstream os2;
  write_slopes_csv(os2, {fit});
  CHECK(os2.str().rfind("family,p,slope,intercept,residual\n", 0) == 0);
  CHECK(os2.str().find("product,1,-1,0.5,0") != std::string::npos);
}
