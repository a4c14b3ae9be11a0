#pragma once

namespace paleoarima::special {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// absolute error below 1e-12 over the tested range.
double regularized_gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b) via the standard continued
/// fraction with the symmetry reduction.
double regularized_beta(double a, double b, double x);

/// Chi-square CDF with df degrees of freedom.
double chi_square_cdf(double x, double df);

/// Two-sided tail probability of Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, int df);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF) for p in (0, 1). Rational
/// approximation refined by one Halley step; absolute error below 1e-9.
double normal_quantile(double p);

} // namespace paleoarima::special
