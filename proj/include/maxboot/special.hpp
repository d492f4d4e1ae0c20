#pragma once

namespace maxboot {

/// Standard normal CDF. Absolute error below 1e-15 (erfc based).
double std_normal_cdf(double x);

/// Inverse of the standard normal CDF for p in (0,1).
/// Wichura's AS 241 (PPND16), relative error around 1e-15.
double std_normal_quantile(double p);

/// Regularized lower incomplete gamma P(k, x) for k > 0, x >= 0.
/// Series expansion for x < k+1, continued fraction otherwise.
double regularized_gamma_p(double k, double x);

/// Quantile of the Weibull(shape k, scale 1) distribution:
/// F^{-1}(u) = (-ln(1-u))^{1/k}. Requires 0 <= u < 1, k > 0.
double weibull_quantile(double u, double k);

/// Quantile of the Gamma(shape k, scale 1) distribution: solves
/// P(k, x) = u to within 1e-10 by bracketed Newton iteration with a
/// Wilson-Hilferty starting point. Requires 0 <= u < 1, k > 0.
double gamma_quantile(double u, double k);

}  // namespace maxboot
