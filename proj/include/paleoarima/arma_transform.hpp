#pragma once

#include <span>
#include <vector>

namespace paleoarima {

/// Map partial autocorrelations (each in (-1, 1)) to AR coefficients via the
/// Durbin-Levinson expansion. The image is exactly the stationary region.
std::vector<double> pacf_to_ar(std::span<const double> pacf);

/// Inverse of pacf_to_ar. For a stationary polynomial every returned value
/// lies in (-1, 1); values outside mark a root on or inside the unit circle.
std::vector<double> ar_to_pacf(std::span<const double> ar);

/// Roots of 1 - a_1 z - ... - a_p z^p all outside the unit circle?
bool stationary_ar(std::span<const double> ar);

/// Roots of 1 + b_1 z + ... + b_q z^q all outside the unit circle?
/// (Plus-sign moving-average convention.)
bool invertible_ma(std::span<const double> ma);

} // namespace paleoarima
