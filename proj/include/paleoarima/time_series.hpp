#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace paleoarima {

/// Ordered, equally spaced observations. Values are stored oldest first so
/// that "forecast" always means forward in calendar time; ingest is
/// responsible for reversing files that list the most recent bin first.
struct TimeSeries {
  std::vector<double> values;
  double step = 1.0;              // years per observation
  std::string origin_label;       // label of the first (oldest) observation
  std::string order_note = "chronological-ascending";

  std::size_t size() const { return values.size(); }
};

/// Validating constructor. Throws std::invalid_argument on an empty series,
/// non-finite values, or a non-positive step.
TimeSeries make_series(std::vector<double> values, double step = 1.0,
                       std::string origin_label = {});

/// Result of differencing a series d times. `initials` keeps the d leading
/// observations of the original series so the operation can be inverted
/// exactly.
struct DifferencedSeries {
  std::vector<double> values;
  int d = 0;
  std::vector<double> initials;
  double step = 1.0;
  std::string origin_label;
};

/// d-th order forward difference. Requires 0 <= d < series length.
DifferencedSeries difference(const TimeSeries &series, int d);

/// Exact inverse of difference(). Requires initials of length d.
TimeSeries integrate(const DifferencedSeries &diffed);

/// Index window [first, last), used for anomaly rebasing.
struct IndexWindow {
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive

  std::size_t size() const { return last > first ? last - first : 0; }
};

/// Subtract the mean over `window` from every value. The returned series has
/// zero mean over the window; applying the same window twice is a no-op.
TimeSeries rebase_anomaly(const TimeSeries &series, IndexWindow window);

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator); 0 for a singleton
  double median = 0.0;
};

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);

/// q-th percentile (0..100) by linear interpolation between closest ranks
/// (inclusive). percentile(xs, 50) is the median.
double percentile(std::span<const double> xs, double q);

SummaryStats summary(std::span<const double> xs);
SummaryStats summary(const TimeSeries &series);

} // namespace paleoarima
