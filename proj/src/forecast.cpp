#include "paleoarima/forecast.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "paleoarima/arma_transform.hpp"
#include "paleoarima/special_functions.hpp"

namespace paleoarima {

PsiWeights psi_weights(const ArimaFit &fit, int count) {
  if (count < 1) throw std::invalid_argument("psi weight count must be >= 1");
  const auto &ar = fit.ar;
  const auto &ma = fit.ma;
  PsiWeights out;
  out.divergent = !ar.empty() && !stationary_ar(ar);
  out.values.assign(static_cast<std::size_t>(count), 0.0);
  out.values[0] = 1.0;
  for (int j = 1; j < count; ++j) {
    double w = j <= static_cast<int>(ma.size()) ? ma[j - 1] : 0.0;
    for (int i = 1; i <= static_cast<int>(ar.size()) && i <= j; ++i)
      w += ar[i - 1] * out.values[static_cast<std::size_t>(j - i)];
    out.values[static_cast<std::size_t>(j)] = w;
  }
  return out;
}

ForecastResult forecast(const ArimaFit &fit, int horizon, double confidence) {
  if (horizon < 1) throw std::invalid_argument("forecast horizon must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0,1)");

  const int p = fit.spec.p;
  const int q = fit.spec.q;
  const int d = fit.spec.d;
  const double delta =
      fit.spec.include_constant ? fit.constant_mean : 0.0;
  const std::vector<double> &w = fit.diff_values;
  const int n_w = static_cast<int>(w.size());
  if (n_w < p) throw std::invalid_argument("fit carries too little history");

  ForecastResult out;
  out.horizon = horizon;
  out.confidence = confidence;
  out.time_step = fit.step;

  // Differenced-scale point forecasts; known values and residuals for
  // indices < n_w, forecasts and zero innovations beyond.
  std::vector<double> w_hat(static_cast<std::size_t>(horizon), 0.0);
  auto w_at = [&](int t) {
    return t < n_w ? w[static_cast<std::size_t>(t)]
                   : w_hat[static_cast<std::size_t>(t - n_w)];
  };
  auto u_at = [&](int t) {
    return t < n_w ? fit.residuals[static_cast<std::size_t>(t)] : 0.0;
  };
  for (int h = 0; h < horizon; ++h) {
    const int t = n_w + h;
    double v = delta;
    for (int i = 1; i <= p; ++i) v += fit.ar[i - 1] * (w_at(t - i) - delta);
    for (int j = 1; j <= q; ++j) v += fit.ma[j - 1] * u_at(t - j);
    w_hat[static_cast<std::size_t>(h)] = v;
  }

  // Integrate back to the original scale through a tail of running values
  // of each difference order: tail[0] is the last observation, tail[j] the
  // last j-th difference.
  out.points.assign(static_cast<std::size_t>(horizon), 0.0);
  if (d == 0) {
    out.points = w_hat;
  } else {
    std::vector<double> tail(fit.integration_tail);
    if (static_cast<int>(tail.size()) != d)
      throw std::invalid_argument("fit is missing its integration tail");
    std::vector<double> lasts(static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
      lasts[static_cast<std::size_t>(j)] = tail.back();
      std::vector<double> next(tail.size() - 1);
      for (std::size_t i = 0; i + 1 < tail.size(); ++i)
        next[i] = tail[i + 1] - tail[i];
      tail = std::move(next);
      if (tail.empty()) break;
    }
    // lasts[j] currently holds the last value of the j-th difference for
    // j = 0..d-1 computed from the stored original-scale tail.
    for (int h = 0; h < horizon; ++h) {
      double add = w_hat[static_cast<std::size_t>(h)];
      for (int j = d - 1; j >= 0; --j) {
        lasts[static_cast<std::size_t>(j)] += add;
        add = lasts[static_cast<std::size_t>(j)];
      }
      out.points[static_cast<std::size_t>(h)] = lasts[0];
    }
  }

  // Original-scale psi weights: ARMA weights cumulated once per difference.
  PsiWeights psi = psi_weights(fit, horizon);
  out.intervals_reliable = !psi.divergent;
  std::vector<double> psi_y = psi.values;
  for (int j = 0; j < d; ++j)
    std::partial_sum(psi_y.begin(), psi_y.end(), psi_y.begin());
  out.psi_weights = psi_y;

  const double z = special::normal_quantile(0.5 * (1.0 + confidence));
  out.lcl.assign(static_cast<std::size_t>(horizon), 0.0);
  out.ucl.assign(static_cast<std::size_t>(horizon), 0.0);
  double var = 0.0;
  for (int h = 0; h < horizon; ++h) {
    var += fit.sigma2 * psi_y[static_cast<std::size_t>(h)] *
           psi_y[static_cast<std::size_t>(h)];
    const double half = z * std::sqrt(var);
    out.lcl[static_cast<std::size_t>(h)] =
        out.points[static_cast<std::size_t>(h)] - half;
    out.ucl[static_cast<std::size_t>(h)] =
        out.points[static_cast<std::size_t>(h)] + half;
  }
  return out;
}

FittedValues fitted_values(const ArimaFit &fit, const TimeSeries &series,
                           double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0,1)");
  const int d = fit.spec.d;
  const int n = static_cast<int>(series.size());
  if (n - d != static_cast<int>(fit.residuals.size()))
    throw std::invalid_argument("series does not match the fit");

  FittedValues out;
  out.first_index = d;
  out.confidence = confidence;
  const double z = special::normal_quantile(0.5 * (1.0 + confidence));
  const double half = z * std::sqrt(fit.sigma2);
  out.fitted.resize(fit.residuals.size());
  out.lcl.resize(fit.residuals.size());
  out.ucl.resize(fit.residuals.size());
  for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
    // The innovation enters the observation with unit weight, so the
    // one-step prediction is exactly observation minus residual.
    out.fitted[i] =
        series.values[static_cast<std::size_t>(d) + i] - fit.residuals[i];
    out.lcl[i] = out.fitted[i] - half;
    out.ucl[i] = out.fitted[i] + half;
  }
  return out;
}

} // namespace paleoarima
