#include "paleoarima/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paleoarima {

TimeSeries make_series(std::vector<double> values, double step,
                       std::string origin_label) {
  if (values.empty()) {
    throw std::invalid_argument("time series must hold at least one value");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("time series values must be finite");
    }
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("time series step must be positive");
  }
  TimeSeries s;
  s.values = std::move(values);
  s.step = step;
  s.origin_label = std::move(origin_label);
  return s;
}

DifferencedSeries difference(const TimeSeries &series, int d) {
  if (d < 0) {
    throw std::invalid_argument("differencing order must be non-negative");
  }
  const std::size_t n = series.size();
  if (static_cast<std::size_t>(d) >= n) {
    throw std::invalid_argument("differencing order " + std::to_string(d) +
                                " too large for series of length " +
                                std::to_string(n));
  }
  DifferencedSeries out;
  out.d = d;
  out.step = series.step;
  out.origin_label = series.origin_label;
  out.initials.assign(series.values.begin(), series.values.begin() + d);
  out.values = series.values;
  for (int pass = 0; pass < d; ++pass) {
    for (std::size_t i = out.values.size() - 1; i > 0; --i) {
      out.values[i] -= out.values[i - 1];
    }
    out.values.erase(out.values.begin());
  }
  return out;
}

TimeSeries integrate(const DifferencedSeries &diffed) {
  if (diffed.initials.size() != static_cast<std::size_t>(diffed.d)) {
    throw std::invalid_argument(
        "cannot invert differencing: expected " + std::to_string(diffed.d) +
        " initial values, got " + std::to_string(diffed.initials.size()));
  }
  if (diffed.d == 0) {
    return make_series(diffed.values, diffed.step, diffed.origin_label);
  }
  // Stage j starts with the j-th forward difference of the stored leading
  // observations; a small difference table recovers those seeds.
  std::vector<std::vector<double>> seeds(diffed.d);
  seeds[0] = diffed.initials;
  for (int j = 1; j < diffed.d; ++j) {
    seeds[j].resize(seeds[j - 1].size() - 1);
    for (std::size_t i = 0; i < seeds[j].size(); ++i) {
      seeds[j][i] = seeds[j - 1][i + 1] - seeds[j - 1][i];
    }
  }
  std::vector<double> acc = diffed.values;
  for (int j = diffed.d - 1; j >= 0; --j) {
    std::vector<double> next(acc.size() + 1);
    next[0] = seeds[j][0];
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] = next[i] + acc[i];
    }
    acc = std::move(next);
  }
  return make_series(std::move(acc), diffed.step, diffed.origin_label);
}

TimeSeries rebase_anomaly(const TimeSeries &series, IndexWindow window) {
  if (window.size() == 0) {
    throw std::invalid_argument("rebase window is empty");
  }
  if (window.last > series.size()) {
    throw std::invalid_argument("rebase window exceeds series bounds");
  }
  double window_mean = 0.0;
  for (std::size_t i = window.first; i < window.last; ++i) {
    window_mean += series.values[i];
  }
  window_mean /= static_cast<double>(window.size());

  TimeSeries out = series;
  for (double &v : out.values) {
    v -= window_mean;
  }
  return out;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("mean of empty range");
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("variance of empty range");
  }
  if (xs.size() == 1) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double percentile(std::span<const double> xs, double q) {
  if (xs.empty()) {
    throw std::invalid_argument("percentile of empty range");
  }
  if (q < 0.0 || q > 100.0) {
    throw std::invalid_argument("percentile rank must be in [0, 100]");
  }
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summary(std::span<const double> xs) {
  SummaryStats s;
  s.mean = mean(xs);
  s.variance = variance(xs);
  s.median = percentile(xs, 50.0);
  return s;
}

SummaryStats summary(const TimeSeries &series) {
  return summary(std::span<const double>(series.values));
}

} // namespace paleoarima
