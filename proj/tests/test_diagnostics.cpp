#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <vector>

#include "paleoarima/diagnostics.hpp"
#include "paleoarima/errors.hpp"
#include "paleoarima/estimation.hpp"
#include "paleoarima/simulate.hpp"

using namespace paleoarima;

namespace {

TimeSeries ar1_path(double phi, int n, std::uint64_t seed) {
  SimSpec sim;
  sim.ar = {phi};
  sim.sigma = 1.0;
  sim.n = n;
  sim.seed = seed;
  return simulate_arma(sim);
}

} // namespace

TEST_CASE("a correctly specified model passes the white-noise check") {
  const TimeSeries y = ar1_path(0.7, 600, 2024);
  const auto f = fit(y, ArimaSpec{1, 0, 0, true});
  REQUIRE(f.converged);
  const auto report = diagnose(f);
  CHECK(report.white_noise_pass);
  CHECK(report.residual_mean_ok);
  CHECK(report.lb_p_at.count(6) == 1);
  CHECK(report.lb_p_at.count(12) == 1);
  CHECK(report.lb_p_at.count(18) == 1);
  for (const auto &[lag, p] : report.lb_p_at) {
    CHECK(p >= 0.05);
    CHECK(lag >= 6);
  }
  CHECK(report.aic == doctest::Approx(f.aic).epsilon(1e-12));
  CHECK(report.bic == doctest::Approx(f.bic).epsilon(1e-12));
}

TEST_CASE("an underfit model fails the white-noise check") {
  const TimeSeries y = ar1_path(0.8, 600, 31337);
  // Constant-only fit leaves all the AR structure in the residuals.
  const auto f = fit(y, ArimaSpec{0, 0, 0, true});
  REQUIRE(f.converged);
  const auto report = diagnose(f);
  CHECK_FALSE(report.white_noise_pass);
  REQUIRE(report.lb_p_at.count(6) == 1);
  CHECK(report.lb_p_at.at(6) < 0.05);
}

TEST_CASE("the pass verdict is monotone in the threshold") {
  const TimeSeries y = ar1_path(0.6, 400, 5150);
  const auto f = fit(y, ArimaSpec{1, 0, 0, true});
  REQUIRE(f.converged);
  double min_p = 1.0;
  for (const auto &[lag, p] : diagnose(f).lb_p_at) min_p = std::min(min_p, p);
  // Below the smallest p-value the check passes, above it the check fails.
  const auto below = diagnose(f, 0, min_p * 0.5);
  const auto above = diagnose(f, 0, std::nextafter(min_p, 2.0) * 1.0001);
  CHECK(below.white_noise_pass);
  CHECK_FALSE(above.white_noise_pass);
}

TEST_CASE("diagnose validates its input") {
  ArimaFit stub;
  stub.spec = ArimaSpec{0, 0, 0, true};
  stub.residuals = {0.1, -0.2, 0.3};
  CHECK_THROWS_AS(diagnose(stub), validation_error);
}

TEST_CASE("information_criteria agrees with the stored fit values") {
  const TimeSeries y = ar1_path(0.5, 250, 404);
  const auto f = fit(y, ArimaSpec{1, 0, 0, true});
  const auto ic = information_criteria(f);
  CHECK(ic.aic == doctest::Approx(f.aic).epsilon(1e-13));
  CHECK(ic.bic == doctest::Approx(f.bic).epsilon(1e-13));
  CHECK(ic.log_likelihood == doctest::Approx(f.log_likelihood).epsilon(1e-13));
}

TEST_CASE("grid search ranks the true model at the top for AR(1) data") {
  const TimeSeries y = ar1_path(0.75, 500, 860);
  GridOptions options;
  options.constant = ConstantOption::with_constant;
  const auto rows = grid_search(y, 2, 0, 2, options);
  REQUIRE(rows.size() == 9);
  REQUIRE(rows.front().ok);
  CHECK(rows.front().fit.converged);
  CHECK(rows.front().diagnostics.white_noise_pass);
  // Anything beating AR(1) on BIC for this data is a near-equivalent
  // small-order model, never a high-order one.
  CHECK(rows.front().spec.p >= 1);
  CHECK(rows.front().spec.p + rows.front().spec.q <= 2);

  SUBCASE("rows are sorted: passers first, then ascending BIC") {
    bool seen_fail = false;
    double last_bic = -1e300;
    for (const auto &row : rows) {
      if (!row.ok || !row.fit.converged) continue;
      if (!row.diagnostics.white_noise_pass) {
        seen_fail = true;
        last_bic = -1e300;
        continue;
      }
      CHECK_FALSE(seen_fail);  // a passer after a failer breaks the ranking
      CHECK(row.fit.bic >= last_bic - 1e-9);
      last_bic = row.fit.bic;
    }
  }
}

TEST_CASE("grid search is deterministic across thread counts") {
  const TimeSeries y = ar1_path(0.6, 300, 27182);
  GridOptions serial;
  serial.n_threads = 1;
  serial.constant = ConstantOption::both;
  GridOptions parallel;
  parallel.n_threads = 4;
  parallel.constant = ConstantOption::both;
  const auto a = grid_search(y, 1, 1, 1, serial);
  const auto b = grid_search(y, 1, 1, 1, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].spec.p == b[i].spec.p);
    CHECK(a[i].spec.d == b[i].spec.d);
    CHECK(a[i].spec.q == b[i].spec.q);
    CHECK(a[i].spec.include_constant == b[i].spec.include_constant);
    CHECK(a[i].ok == b[i].ok);
    if (a[i].ok && b[i].ok) {
      CHECK(a[i].fit.bic == doctest::Approx(b[i].fit.bic).epsilon(1e-15));
      for (int r = 0; r < a[i].spec.p; ++r)
        CHECK(a[i].fit.ar[static_cast<std::size_t>(r)] ==
              doctest::Approx(b[i].fit.ar[static_cast<std::size_t>(r)])
                  .epsilon(1e-15));
    }
  }
}

TEST_CASE("grid search covers the expected cells") {
  const TimeSeries y = ar1_path(0.5, 200, 11);
  GridOptions options;
  options.constant = ConstantOption::both;
  const auto rows = grid_search(y, 1, 0, 1, options);
  // 2 * 1 * 2 = 4 specs, doubled for the constant choice, minus the
  // empty (0,0,0)-without-constant cell.
  CHECK(rows.size() == 7);
  CHECK_THROWS_AS(grid_search(y, 6, 0, 0, options), std::invalid_argument);
}
