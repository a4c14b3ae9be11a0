#pragma once

#include <span>
#include <string>
#include <vector>

#include "paleoarima/time_series.hpp"

namespace paleoarima {

/// Moving-average reporting convention. Internally the engine always uses
/// plus signs (y_t = mu + u_t + b_1 u_{t-1} + ...); `spss` negates MA
/// coefficients in reports, matching the convention of the major packages.
enum class MaSign { spss, boxjenkins };

std::string to_string(MaSign sign);
MaSign ma_sign_from_string(const std::string &name);

struct ArimaSpec {
  int p = 0;
  int d = 0;
  int q = 0;
  bool include_constant = true;
};

/// Throws std::invalid_argument when the spec violates the engine limits
/// (p, d, q <= 5; at least one estimated parameter).
void validate(const ArimaSpec &spec);

struct FitOptions {
  bool enforce_stationarity = true;
  bool enforce_invertibility = true;
  int max_iterations = 500;
  double rel_tol = 1e-10;
  MaSign ma_sign = MaSign::spss;
  bool compute_se = true;
};

struct ArimaFit {
  ArimaSpec spec;
  MaSign ma_sign = MaSign::spss;

  // Constant in mean form (the process mean of the differenced series) and
  // in intercept form, intercept = mean * (1 - sum of AR coefficients).
  // Reports label the mean form "Constant". NaN when no constant is fitted.
  double constant_mean = 0.0;
  double constant_intercept = 0.0;

  std::vector<double> ar;  // plus-sign convention
  std::vector<double> ma;  // plus-sign convention (negate for spss reports)

  // Per-parameter inference in report order: [constant?, ar..., ma...].
  std::vector<double> se;
  std::vector<double> t_stat;   // on the reported scale
  std::vector<double> p_value;  // two-sided Student-t
  bool se_available = false;

  std::vector<double> residuals;  // length n - d; first p entries are zero
  double sigma2 = 0.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  bool converged = false;
  int iterations = 0;
  int n_effective = 0;  // (n - d) - p conditional-sum-of-squares terms
  int df = 0;           // n_effective - number of estimated parameters
  bool stationarity_enforced = true;

  // Carried along for forecasting and report output.
  std::vector<double> diff_values;      // the differenced series the fit saw
  std::vector<double> integration_tail; // last d original observations
  double step = 1.0;
  std::vector<std::string> warnings;

  int n_params() const {
    return spec.p + spec.q + (spec.include_constant ? 1 : 0);
  }
  /// MA coefficients under the fit's reporting convention.
  std::vector<double> reported_ma() const;
  /// Row labels matching the classic parameter table.
  std::vector<std::string> param_labels() const;
  /// Estimates in report order and convention: [constant?, ar..., ma...].
  std::vector<double> reported_estimates() const;
};

/// Conditional sum of squares sum u_t^2 with zero pre-sample innovations.
/// Residuals are written for t >= p; earlier entries stay zero. `w` is the
/// differenced series, `delta` its mean-form constant.
double css_sum_of_squares(std::span<const double> w, double delta,
                          std::span<const double> ar,
                          std::span<const double> ma,
                          std::vector<double> *residuals_out = nullptr);

struct InitialParams {
  std::vector<double> values;  // [constant?, ar..., ma...]
  bool fallback_used = false;
};

/// Optimizer warm start: constant from the sample mean, AR from the
/// Yule-Walker equations, MA from a Hannan-Rissanen regression on long-AR
/// residuals; everything clamped inside the stationary/invertible region.
InitialParams initial_params(const TimeSeries &series, const ArimaSpec &spec);

/// Fit by minimizing the conditional sum of squares. Never throws on
/// non-convergence: the returned fit carries converged = false instead.
ArimaFit fit(const TimeSeries &series, const ArimaSpec &spec,
             const FitOptions &options = {});

/// Two-sided Student-t tail probability (the Sig. column).
double t_significance(double t, int df);

struct InformationCriteria {
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
};

/// Gaussian criteria from the CSS innovation variance:
/// lnL = -n/2 (ln(2 pi sigma2) + 1), AIC = -2 lnL + 2k, BIC = -2 lnL + k ln n
/// with k = n_params + 1 counting the innovation variance.
InformationCriteria compute_information_criteria(double sigma2,
                                                 int n_effective,
                                                 int n_params);

} // namespace paleoarima
