#include "paleoarima/arma_transform.hpp"

#include <cmath>

namespace paleoarima {

std::vector<double> pacf_to_ar(std::span<const double> pacf) {
  const std::size_t p = pacf.size();
  std::vector<double> coeffs(pacf.begin(), pacf.end());
  std::vector<double> work = coeffs;
  for (std::size_t j = 1; j < p; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      work[k] = coeffs[k] - pacf[j] * coeffs[j - k - 1];
    }
    for (std::size_t k = 0; k < j; ++k) {
      coeffs[k] = work[k];
    }
  }
  return coeffs;
}

std::vector<double> ar_to_pacf(std::span<const double> ar) {
  std::vector<double> pacf(ar.begin(), ar.end());
  std::vector<double> work(ar.size());
  for (std::size_t j = ar.size(); j-- > 1;) {
    const double last = pacf[j];
    const double denom = 1.0 - last * last;
    if (denom == 0.0) {
      // Root exactly on the unit circle; leave remaining values as markers.
      break;
    }
    for (std::size_t k = 0; k < j; ++k) {
      work[k] = (pacf[k] + last * pacf[j - k - 1]) / denom;
    }
    for (std::size_t k = 0; k < j; ++k) {
      pacf[k] = work[k];
    }
  }
  return pacf;
}

bool stationary_ar(std::span<const double> ar) {
  // Trim trailing zeros so an effectively lower-order polynomial is judged
  // at its true order.
  std::size_t p = ar.size();
  while (p > 0 && ar[p - 1] == 0.0) --p;
  if (p == 0) return true;
  const auto pacf = ar_to_pacf(ar.subspan(0, p));
  for (double v : pacf) {
    if (!std::isfinite(v) || std::fabs(v) >= 1.0) return false;
  }
  return true;
}

bool invertible_ma(std::span<const double> ma) {
  // 1 + b_1 z + ... has the same root geometry as the AR polynomial with
  // coefficients -b_i.
  std::vector<double> negated(ma.begin(), ma.end());
  for (double &v : negated) v = -v;
  return stationary_ar(negated);
}

} // namespace paleoarima
