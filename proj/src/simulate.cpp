#include "paleoarima/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "paleoarima/arma_transform.hpp"

namespace paleoarima {

double SplitMix64::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

TimeSeries simulate_arma(const SimSpec &spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("simulation length must be at least 1");
  }
  if (spec.sigma < 0.0) {
    throw std::invalid_argument("sigma must be non-negative");
  }
  if (!stationary_ar(spec.ar)) {
    throw std::invalid_argument("AR polynomial is not stationary");
  }
  const int p = static_cast<int>(spec.ar.size());
  const int q = static_cast<int>(spec.ma.size());
  const int burn_in =
      spec.burn_in >= 0 ? spec.burn_in : 10 * (p + q + 1);
  const int total = spec.n + burn_in;

  SplitMix64 rng(spec.seed);
  std::vector<double> centered(total, 0.0);
  std::vector<double> shocks(total, 0.0);
  for (int t = 0; t < total; ++t) {
    double u = spec.sigma == 0.0 ? 0.0 : spec.sigma * rng.next_gaussian();
    shocks[t] = u;
    double z = u;
    for (int i = 1; i <= p && t - i >= 0; ++i) {
      z += spec.ar[i - 1] * centered[t - i];
    }
    for (int j = 1; j <= q && t - j >= 0; ++j) {
      z += spec.ma[j - 1] * shocks[t - j];
    }
    centered[t] = z;
  }

  std::vector<double> values(spec.n);
  for (int t = 0; t < spec.n; ++t) {
    values[t] = spec.constant + centered[burn_in + t];
  }
  return make_series(std::move(values));
}

TimeSeries white_noise(int n, double sigma, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("white noise length must be at least 1");
  }
  if (sigma < 0.0) {
    throw std::invalid_argument("sigma must be non-negative");
  }
  SplitMix64 rng(seed);
  std::vector<double> values(n, 0.0);
  if (sigma > 0.0) {
    for (double &v : values) v = sigma * rng.next_gaussian();
  }
  return make_series(std::move(values));
}

} // namespace paleoarima
