#pragma once

#include <vector>

#include "paleoarima/estimation.hpp"

namespace paleoarima {

struct PsiWeights {
  std::vector<double> values;  // psi_0 = 1, psi_1, ...
  bool divergent = false;      // AR part outside the stationary region
};

/// MA(infinity) weights of the ARMA part (differenced scale):
/// psi_0 = 1, psi_j = sum_i ar_i psi_{j-i} + ma_j.
PsiWeights psi_weights(const ArimaFit &fit, int count);

struct ForecastResult {
  int horizon = 0;
  double confidence = 0.95;
  std::vector<double> points;  // original scale
  std::vector<double> lcl;
  std::vector<double> ucl;
  // Weights generating the forecast-error variance on the original scale
  // (the ARMA weights cumulated d times): var(h) = sigma2 * sum_{j<h} psi_j^2.
  std::vector<double> psi_weights;
  bool intervals_reliable = true;
  double time_step = 1.0;  // years per step, copied from the fit
};

/// h-step forecasts with symmetric normal confidence limits. Future
/// innovations are set to zero, in-sample residuals feed the MA terms, and
/// differenced-scale forecasts are integrated back to the original scale.
/// Parameter-estimation uncertainty is not propagated into the intervals.
ForecastResult forecast(const ArimaFit &fit, int horizon,
                        double confidence = 0.95);

struct FittedValues {
  // Aligned with original observations d, d+1, ..., n-1.
  int first_index = 0;
  double confidence = 0.95;
  std::vector<double> fitted;  // observation - residual, exactly
  std::vector<double> lcl;
  std::vector<double> ucl;
};

/// One-step-ahead in-sample predictions with +-z*sigma bands.
FittedValues fitted_values(const ArimaFit &fit, const TimeSeries &series,
                           double confidence = 0.95);

} // namespace paleoarima
