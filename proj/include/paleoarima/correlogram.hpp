#pragma once

#include <span>
#include <vector>

#include "paleoarima/time_series.hpp"

namespace paleoarima {

/// One correlogram row in the shape of the classic Box-Ljung report:
/// lag, sample autocorrelation, partial autocorrelation, white-noise
/// standard error, cumulative Q statistic with df and p-value.
struct CorrelogramRow {
  int lag = 0;
  double acf = 0.0;
  double pacf = 0.0;
  double se_white_noise = 0.0;
  double q_stat = 0.0;
  int df = 0;
  double p_value = 0.0;
};

struct CorrelogramReport {
  int n = 0;
  std::vector<CorrelogramRow> rows;
  bool pacf_clamped = false;  // Durbin-Levinson hit |phi| > 1 and was clamped
};

/// Sample autocorrelations rho_1..rho_max_lag with the biased (1/n)
/// covariance normalization: rho_k = sum (y_t - m)(y_{t+k} - m) / sum (y_t - m)^2.
/// Requires length >= max_lag + 2 and positive variance.
std::vector<double> acf(const TimeSeries &series, int max_lag);

/// Standard error of rho_k under the white-noise null:
/// sqrt((n - k) / (n (n + 2))). Requires 1 <= k < n.
double white_noise_se(int n, int k);

struct PacfResult {
  std::vector<double> values;  // phi_11..phi_kk
  bool clamped = false;
};

/// Partial autocorrelations by the Durbin-Levinson recursion on the sample
/// ACF. Values pushed outside [-1, 1] by numerical noise are clamped and
/// flagged.
PacfResult pacf(const TimeSeries &series, int max_lag);

/// Partial autocorrelations computed from a given autocorrelation sequence.
PacfResult pacf_from_acf(std::span<const double> rho);

struct LjungBoxRow {
  int lag = 0;
  double q_stat = 0.0;
  int df = 0;
  double p_value = 0.0;
};

/// Ljung-Box rows for K = 1..up_to_lag:
/// Q_K = n (n + 2) sum_{k<=K} rho_k^2 / (n - k), p from chi-square(df = K).
std::vector<LjungBoxRow> ljung_box(std::span<const double> acf_values, int n,
                                   int up_to_lag);

/// Default correlogram depth: min(20, n / 4), at least 1.
int default_max_lag(int n);

/// Assemble the full report for a series.
CorrelogramReport build_correlogram(const TimeSeries &series, int max_lag);

struct StationarityAssessment {
  bool stationary = false;
  int suggested_d = 0;
  int dominant_lag = 0;
  std::string rule;  // human-readable statement of the codified decay rule
};

/// Codified correlogram stationarity check. The series is declared
/// non-stationary when the ACF decays too slowly: rho_5 > 0.5, or the ACF has
/// not entered the +/- band * SE white-noise band by lag max(10, max_lag / 2).
/// suggested_d is the smallest d <= 2 whose differenced series passes;
/// dominant_lag maximizes |rho_k| / SE_k among lags outside the band.
StationarityAssessment assess_stationarity(const TimeSeries &series,
                                           int max_lag = 0,
                                           double band = 1.96);

} // namespace paleoarima
