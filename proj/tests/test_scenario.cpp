#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "paleoarima/ingest.hpp"
#include "paleoarima/report_io.hpp"
#include "paleoarima/scenario.hpp"
#include "paleoarima/simulate.hpp"
#include "paleoarima/time_series.hpp"

#ifndef DATA_PATH
#define DATA_PATH "data"
#endif

using namespace paleoarima;

namespace {

// Three correlated but distinct percentile paths over 121 century bins.
EnsembleTable synthetic_table(std::uint64_t seed) {
  SimSpec sim;
  sim.ar = {0.85};
  sim.ma = {0.25};
  sim.sigma = 0.12;
  sim.n = 121;
  sim.seed = seed;
  const TimeSeries median = simulate_arma(sim);
  EnsembleTable table;
  SplitMix64 rng(seed + 1);
  for (int i = 0; i < 121; ++i) {
    EnsembleRow row;
    row.age_bp = 12000.0 - 100.0 * i;
    row.median = median.values[static_cast<std::size_t>(i)];
    const double lo = 0.25 + 0.05 * rng.next_uniform();
    const double hi = 0.30 + 0.05 * rng.next_uniform();
    row.p5 = row.median - lo;
    row.p95 = row.median + hi;
    table.rows.push_back(row);
  }
  table.spacing = 100.0;
  return table;
}

} // namespace

TEST_CASE("the six printed coefficients have median one third") {
  // The published six estimates, in reporting convention.
  const std::vector<double> printed{0.932, -0.266, 0.999,
                                    -0.700, 0.996, -0.382};
  const double med = percentile(printed, 50.0);
  CHECK(std::fabs(med - 0.333) <= 1e-12);

  SUBCASE("the median is permutation invariant") {
    std::vector<double> shuffled{-0.700, 0.996, 0.932, -0.382, -0.266, 0.999};
    CHECK(percentile(shuffled, 50.0) == doctest::Approx(med).epsilon(1e-15));
  }
}

TEST_CASE("run_scenario fits all three percentile series") {
  const auto table = synthetic_table(61);
  const auto report = run_scenario(table);
  REQUIRE(report.series.size() == 3);
  CHECK(report.series[0].column == PercentileColumn::median);
  CHECK(report.series[1].column == PercentileColumn::p5);
  CHECK(report.series[2].column == PercentileColumn::p95);
  CHECK(report.all_converged);
  CHECK(report.six_estimates_used.size() == 6);
  for (double v : report.six_estimates) CHECK(std::isfinite(v));

  SUBCASE("slots follow the fixed order") {
    const auto &med = report.series[0].fit;
    CHECK(report.six_estimates[0] == doctest::Approx(med.ar[0]));
    CHECK(report.six_estimates[1] ==
          doctest::Approx(med.reported_ma()[0]));
    const auto &p5 = report.series[1].fit;
    CHECK(report.six_estimates[2] == doctest::Approx(p5.ar[0]));
    CHECK(report.six_estimates[3] == doctest::Approx(p5.reported_ma()[0]));
  }
  SUBCASE("median of the used estimates matches percentile()") {
    CHECK(report.estimates_median ==
          doctest::Approx(percentile(report.six_estimates_used, 50.0))
              .epsilon(1e-15));
  }
  SUBCASE("rebasing is anchored on the reference bin") {
    CHECK(report.reference_bin.age_bp == doctest::Approx(200.0));
    const auto &s = report.series[0];
    const std::size_t idx = report.reference_bin.series_index;
    // After rebasing, the fitted series is zero at the reference bin, so
    // the subtracted value is the raw observation there.
    const auto raw = to_series(table, PercentileColumn::median);
    CHECK(s.reference_value == doctest::Approx(raw.values[idx]).epsilon(1e-12));
  }
  SUBCASE("forecasts run one bin ahead") {
    for (const auto &s : report.series) {
      CHECK(s.forecast.horizon == 1);
      CHECK(s.forecast.points.size() == 1);
      CHECK(s.forecast.time_step == doctest::Approx(100.0));
    }
  }
}

TEST_CASE("identical columns give duplicated estimates") {
  auto table = synthetic_table(15);
  for (auto &row : table.rows) {
    row.p5 = row.median;
    row.p95 = row.median;
  }
  const auto report = run_scenario(table);
  REQUIRE(report.all_converged);
  CHECK(report.six_estimates[0] ==
        doctest::Approx(report.six_estimates[2]).epsilon(1e-12));
  CHECK(report.six_estimates[0] ==
        doctest::Approx(report.six_estimates[4]).epsilon(1e-12));
  CHECK(report.six_estimates[1] ==
        doctest::Approx(report.six_estimates[3]).epsilon(1e-12));
  const std::vector<double> pair{report.six_estimates[0],
                                 report.six_estimates[1]};
  CHECK(report.estimates_median ==
        doctest::Approx(percentile(pair, 50.0)).epsilon(1e-12));
}

TEST_CASE("compare_ipcc states the verdict for each side of the threshold") {
  const auto table = synthetic_table(61);
  const auto report = run_scenario(table);
  SUBCASE("below") {
    const auto verdict = compare_ipcc(0.333, report.series, 1.5);
    CHECK(verdict.find("coefficient_median 0.333 is below the 1.5 C "
                       "threshold") != std::string::npos);
  }
  SUBCASE("at") {
    const auto verdict = compare_ipcc(1.5, report.series, 1.5);
    CHECK(verdict.find("coefficient_median 1.5 is at the 1.5 C threshold") !=
          std::string::npos);
  }
  SUBCASE("above") {
    const auto verdict = compare_ipcc(2.0, report.series, 1.5);
    CHECK(verdict.find("coefficient_median 2 is above the 1.5 C threshold") !=
          std::string::npos);
  }
}

TEST_CASE("scenario reports serialize deterministically") {
  const auto table = synthetic_table(93);
  const auto a = run_scenario(table);
  const auto b = run_scenario(table);
  CHECK(scenario_json(a) == scenario_json(b));
  CHECK(six_estimates_csv(a) == six_estimates_csv(b));
}

TEST_CASE("the bundled data set runs the full scenario") {
  const auto table =
      parse_percentiles_file(std::string(DATA_PATH) + "/temp12k_percentiles.csv");
  const auto report = run_scenario(table);
  REQUIRE(report.series.size() == 3);
  CHECK(report.all_converged);
  CHECK(std::isfinite(report.estimates_median));
  CHECK(!report.verdict.empty());
}
