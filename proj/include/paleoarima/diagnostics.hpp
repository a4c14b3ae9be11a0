#pragma once

#include <map>
#include <string>
#include <vector>

#include "paleoarima/correlogram.hpp"
#include "paleoarima/estimation.hpp"
#include "paleoarima/time_series.hpp"

namespace paleoarima {

struct DiagnosticReport {
  CorrelogramReport residual_correlogram;
  bool white_noise_pass = false;
  // Ljung-Box p-values at the checked lags, degrees of freedom adjusted for
  // the fitted parameters (df = K - p - q).
  std::map<int, double> lb_p_at;
  bool residual_mean_ok = false;
  double residual_mean = 0.0;
  double aic = 0.0;
  double bic = 0.0;
};

/// Residual white-noise verification: correlogram of the innovations,
/// Ljung-Box p >= threshold at lags {6, 12, 18} (those available), and the
/// residual mean within +-2 sigma/sqrt(n) of zero.
DiagnosticReport diagnose(const ArimaFit &fit, int max_lag = 0,
                          double p_threshold = 0.05);

/// AIC/BIC recomputed from the fit's innovation variance.
InformationCriteria information_criteria(const ArimaFit &fit);

enum class ConstantOption { with_constant, without_constant, both };

struct GridRow {
  ArimaSpec spec;
  ArimaFit fit;
  DiagnosticReport diagnostics;
  bool ok = false;          // fit and diagnostics completed
  std::string error;        // populated when ok is false
};

struct GridOptions {
  FitOptions fit;
  ConstantOption constant = ConstantOption::with_constant;
  double p_threshold = 0.05;
  int n_threads = 0;  // 0 -> hardware concurrency
};

/// Fits every (p,d,q) combination up to the bounds and ranks the rows:
/// white-noise passers first, then ascending BIC, non-converged and failed
/// rows last, ties broken by (p,d,q,constant). The ordering is deterministic
/// regardless of how many worker threads ran the fits.
std::vector<GridRow> grid_search(const TimeSeries &series, int p_max,
                                 int d_max, int q_max,
                                 const GridOptions &options = {});

} // namespace paleoarima
