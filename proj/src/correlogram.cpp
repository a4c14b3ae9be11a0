#include "paleoarima/correlogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paleoarima/special_functions.hpp"

namespace paleoarima {

std::vector<double> acf(const TimeSeries &series, int max_lag) {
  const int n = static_cast<int>(series.size());
  if (max_lag < 1) {
    throw std::invalid_argument("max_lag must be at least 1");
  }
  if (n < max_lag + 2) {
    throw std::invalid_argument("series too short for requested lags");
  }
  const double m = mean(series.values);
  double denom = 0.0;
  for (double v : series.values) {
    denom += (v - m) * (v - m);
  }
  if (denom == 0.0) {
    throw std::invalid_argument("degenerate series: zero variance");
  }
  std::vector<double> rho(max_lag);
  for (int k = 1; k <= max_lag; ++k) {
    double cov = 0.0;
    for (int t = 0; t + k < n; ++t) {
      cov += (series.values[t] - m) * (series.values[t + k] - m);
    }
    rho[k - 1] = cov / denom;
  }
  return rho;
}

double white_noise_se(int n, int k) {
  if (k < 1 || k >= n) {
    throw std::invalid_argument("white_noise_se requires 1 <= k < n");
  }
  const double dn = static_cast<double>(n);
  return std::sqrt((dn - k) / (dn * (dn + 2.0)));
}

PacfResult pacf_from_acf(std::span<const double> rho) {
  PacfResult result;
  const std::size_t max_lag = rho.size();
  result.values.resize(max_lag, 0.0);
  if (max_lag == 0) return result;

  // Durbin-Levinson: phi[k][j] coefficients of the order-k predictor.
  std::vector<double> phi_prev(max_lag + 1, 0.0);
  std::vector<double> phi_cur(max_lag + 1, 0.0);
  phi_prev[1] = rho[0];
  result.values[0] = rho[0];
  double prediction_var = 1.0 - rho[0] * rho[0];
  for (std::size_t k = 2; k <= max_lag; ++k) {
    double num = rho[k - 1];
    for (std::size_t j = 1; j < k; ++j) {
      num -= phi_prev[j] * rho[k - 1 - j];
    }
    double phi_kk = prediction_var > 0.0 ? num / prediction_var : 0.0;
    if (!std::isfinite(phi_kk)) {
      phi_kk = 0.0;
      result.clamped = true;
    } else if (std::fabs(phi_kk) > 1.0) {
      phi_kk = std::clamp(phi_kk, -1.0, 1.0);
      result.clamped = true;
    }
    for (std::size_t j = 1; j < k; ++j) {
      phi_cur[j] = phi_prev[j] - phi_kk * phi_prev[k - j];
    }
    phi_cur[k] = phi_kk;
    result.values[k - 1] = phi_kk;
    prediction_var *= (1.0 - phi_kk * phi_kk);
    std::swap(phi_prev, phi_cur);
  }
  return result;
}

PacfResult pacf(const TimeSeries &series, int max_lag) {
  return pacf_from_acf(acf(series, max_lag));
}

std::vector<LjungBoxRow> ljung_box(std::span<const double> acf_values, int n,
                                   int up_to_lag) {
  if (up_to_lag < 1 || static_cast<std::size_t>(up_to_lag) > acf_values.size()) {
    throw std::invalid_argument("ljung_box lag outside the supplied ACF range");
  }
  if (up_to_lag >= n) {
    throw std::invalid_argument("ljung_box requires up_to_lag < n");
  }
  const double dn = static_cast<double>(n);
  std::vector<LjungBoxRow> rows(up_to_lag);
  double partial = 0.0;
  for (int k = 1; k <= up_to_lag; ++k) {
    const double rho = acf_values[k - 1];
    partial += rho * rho / (dn - k);
    LjungBoxRow &row = rows[k - 1];
    row.lag = k;
    row.q_stat = dn * (dn + 2.0) * partial;
    row.df = k;
    row.p_value = 1.0 - special::chi_square_cdf(row.q_stat, row.df);
  }
  return rows;
}

int default_max_lag(int n) {
  return std::max(1, std::min(20, n / 4));
}

CorrelogramReport build_correlogram(const TimeSeries &series, int max_lag) {
  const int n = static_cast<int>(series.size());
  if (max_lag <= 0) max_lag = default_max_lag(n);
  const auto rho = acf(series, max_lag);
  const auto partial = pacf_from_acf(rho);
  const auto lb = ljung_box(rho, n, max_lag);

  CorrelogramReport report;
  report.n = n;
  report.pacf_clamped = partial.clamped;
  report.rows.resize(max_lag);
  for (int k = 1; k <= max_lag; ++k) {
    CorrelogramRow &row = report.rows[k - 1];
    row.lag = k;
    row.acf = rho[k - 1];
    row.pacf = partial.values[k - 1];
    row.se_white_noise = white_noise_se(n, k);
    row.q_stat = lb[k - 1].q_stat;
    row.df = lb[k - 1].df;
    row.p_value = lb[k - 1].p_value;
  }
  return report;
}

namespace {

// Slow-decay verdict for one report: true = looks stationary.
bool passes_decay_test(const CorrelogramReport &report, double band) {
  const int max_lag = static_cast<int>(report.rows.size());
  if (max_lag >= 5 && report.rows[4].acf > 0.5) return false;
  const int horizon = std::min(max_lag, std::max(10, max_lag / 2));
  for (int k = 1; k <= horizon; ++k) {
    const CorrelogramRow &row = report.rows[k - 1];
    if (std::fabs(row.acf) < band * row.se_white_noise) return true;
  }
  return false;
}

} // namespace

StationarityAssessment assess_stationarity(const TimeSeries &series,
                                           int max_lag, double band) {
  const int n = static_cast<int>(series.size());
  if (max_lag <= 0) max_lag = default_max_lag(n);

  StationarityAssessment out;
  out.rule =
      "non-stationary if acf(5) > 0.5 or |acf| stays outside the white-noise "
      "band through lag max(10, max_lag/2); suggested_d = smallest d <= 2 "
      "whose differenced series passes";

  const CorrelogramReport base = build_correlogram(series, max_lag);
  out.stationary = passes_decay_test(base, band);

  double best_score = -1.0;
  for (const CorrelogramRow &row : base.rows) {
    const double score = std::fabs(row.acf) / row.se_white_noise;
    if (std::fabs(row.acf) >= band * row.se_white_noise && score > best_score) {
      best_score = score;
      out.dominant_lag = row.lag;
    }
  }

  out.suggested_d = 2;
  for (int d = 0; d <= 2; ++d) {
    if (static_cast<std::size_t>(d) >= series.size()) break;
    const auto diffed = difference(series, d);
    if (diffed.values.size() < 4) break;
    TimeSeries probe = make_series(diffed.values, series.step);
    const int lag = std::min(max_lag,
                             static_cast<int>(probe.size()) - 2);
    if (lag < 1) break;
    bool ok;
    try {
      ok = passes_decay_test(build_correlogram(probe, lag), band);
    } catch (const std::invalid_argument &) {
      ok = true;  // differenced to a constant: nothing left to remove
    }
    if (ok) {
      out.suggested_d = d;
      break;
    }
  }
  return out;
}

} // namespace paleoarima
