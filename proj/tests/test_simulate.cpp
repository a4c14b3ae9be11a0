#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <vector>

#include "paleoarima/correlogram.hpp"
#include "paleoarima/simulate.hpp"

using namespace paleoarima;

TEST_CASE("identical spec and seed give bit-identical output") {
  SimSpec spec;
  spec.ar = {0.8};
  spec.ma = {0.2};
  spec.constant = 0.5;
  spec.sigma = 1.3;
  spec.n = 500;
  spec.seed = 12345;
  const TimeSeries a = simulate_arma(spec);
  const TimeSeries b = simulate_arma(spec);
  CHECK(a.values == b.values);  // exact, not approximate
  spec.seed = 12346;
  const TimeSeries c = simulate_arma(spec);
  CHECK(a.values != c.values);
}

TEST_CASE("white noise moments match the requested sigma within sampling error") {
  const TimeSeries w = white_noise(100000, 2.0, 7);
  const double m = mean(w.values);
  const double v = variance(w.values);
  // mean: sd of the estimate is sigma/sqrt(n) = 0.0063; allow 5 sds.
  CHECK(std::fabs(m) < 5.0 * 2.0 / std::sqrt(100000.0));
  CHECK(v == doctest::Approx(4.0).epsilon(0.05));
  SUBCASE("uniform generator stays strictly inside (0,1)") {
    SplitMix64 rng(3);
    for (int i = 0; i < 10000; ++i) {
      const double u = rng.next_uniform();
      CHECK(u > 0.0);
      CHECK(u < 1.0);
    }
  }
}

TEST_CASE("AR(1) simulation has the right lag-1 autocorrelation and mean") {
  SimSpec spec;
  spec.ar = {0.6};
  spec.constant = 3.0;
  spec.sigma = 1.0;
  spec.n = 50000;
  spec.seed = 11;
  const TimeSeries y = simulate_arma(spec);
  CHECK(mean(y.values) == doctest::Approx(3.0).epsilon(0.01));
  const auto rho = acf(y, 2);
  CHECK(rho[0] == doctest::Approx(0.6).epsilon(0.02));
  CHECK(rho[1] == doctest::Approx(0.36).epsilon(0.05));
  // Process variance sigma^2 / (1 - a^2) = 1.5625.
  CHECK(variance(y.values) == doctest::Approx(1.0 / (1.0 - 0.36)).epsilon(0.05));
}

TEST_CASE("MA(1) simulation autocorrelation cuts off after lag 1") {
  SimSpec spec;
  spec.ma = {0.5};
  spec.sigma = 1.0;
  spec.n = 50000;
  spec.seed = 21;
  const TimeSeries y = simulate_arma(spec);
  const auto rho = acf(y, 4);
  CHECK(rho[0] == doctest::Approx(0.5 / 1.25).epsilon(0.05));
  for (int k = 2; k <= 4; ++k) {
    CHECK(std::fabs(rho[k - 1]) < 0.02);
  }
}

TEST_CASE("simulate_arma validates its spec") {
  SimSpec spec;
  spec.n = 10;
  spec.ar = {1.2};
  CHECK_THROWS_AS(simulate_arma(spec), std::invalid_argument);
  spec.ar = {0.5};
  spec.sigma = -1.0;
  CHECK_THROWS_AS(simulate_arma(spec), std::invalid_argument);
  spec.sigma = 1.0;
  spec.n = 0;
  CHECK_THROWS_AS(simulate_arma(spec), std::invalid_argument);
}

TEST_CASE("Ljung-Box p-values on white noise look uniform over seeds") {
  // Counting rejections at the 5% level across 200 seeds: the expected
  // count is 10; the bounds are wide enough to make flakiness negligible
  // while still catching a broken generator or Q statistic.
  int rejections = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const TimeSeries w = white_noise(256, 1.0, seed);
    const auto rho = acf(w, 10);
    const auto rows = ljung_box(rho, static_cast<int>(w.size()), 10);
    if (rows.back().p_value < 0.05) ++rejections;
  }
  CHECK(rejections >= 2);
  CHECK(rejections <= 25);
}
