#pragma once

namespace tsforge::stats {

/// ln Γ(x) for x > 0 (Lanczos approximation, ~15 significant digits).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, continued fraction otherwise; absolute
/// error below 1e-12 over the chi-square range used here.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Chi-square CDF with k degrees of freedom evaluated at x.
double chi_square_cdf(double x, double k);

/// Chi-square upper tail (survival function), the p-value side.
double chi_square_sf(double x, double k);

}  // namespace tsforge::stats
