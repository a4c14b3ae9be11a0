#pragma once

#include <cstdint>
#include <vector>

#include "paleoarima/time_series.hpp"

namespace paleoarima {

/// Deterministic 64-bit shift/multiply generator (splitmix64). Implemented
/// in-repo so test fixtures reproduce bit-identically everywhere.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double strictly inside (0, 1).
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on paired uniforms.
  double next_gaussian();

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seeded ARMA process description. AR/MA coefficients follow the plus-sign
/// convention: y_t = delta + sum a_i (y_{t-i} - delta) + u_t + sum b_j u_{t-j}.
struct SimSpec {
  std::vector<double> ar;
  std::vector<double> ma;
  double constant = 0.0;   // process mean delta
  double sigma = 1.0;      // innovation standard deviation
  int n = 0;
  int burn_in = -1;        // negative = default 10 * (p + q + 1)
  std::uint64_t seed = 0;
};

/// Generate a Gaussian ARMA path. Identical spec + seed gives bit-identical
/// output. Throws std::invalid_argument for explosive AR polynomials,
/// n < 1, burn_in handling aside, or negative sigma.
TimeSeries simulate_arma(const SimSpec &spec);

/// i.i.d. Gaussian(0, sigma^2) series from the seeded generator.
TimeSeries white_noise(int n, double sigma, std::uint64_t seed);

} // namespace paleoarima
