#include "maxboot/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "maxboot/rng.hpp"

namespace maxboot {

double std_normal_cdf(double x) {
  if (std::isnan(x)) throw std::domain_error("std_normal_cdf: x is NaN");
  // erfc keeps full relative accuracy in the lower tail where
  // 1 - Phi(-x) would cancel.
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("std_normal_quantile: p must lie in (0,1), got " +
                            std::to_string(p));
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double num, den;
  if (r <= 5.0) {
    r -= 1.6;
    num = ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
               2.41780725177450611770e-1) *
                  r +
              1.27045825245236838258e0) *
                 r +
             3.64784832476320460504e0) *
                r +
            5.76949722146069140550e0) *
               r +
           4.63033784615654529590e0) *
              r +
          1.42343711074968357734e0;
    den = ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
               1.51986665636164571966e-2) *
                  r +
              1.48103976427480074590e-1) *
                 r +
             6.89767334985100004550e-1) *
                r +
            1.67638483018380384940e0) *
               r +
           2.05319162663775882187e0) *
              r +
          1.0;
  } else {
    r -= 5.0;
    num = ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
               1.24266094738807843860e-3) *
                  r +
              2.65321895265761230930e-2) *
                 r +
             2.96560571828504891230e-1) *
                r +
            1.78482653991729133580e0) *
               r +
           5.46378491116411436990e0) *
              r +
          6.65790464350110377720e0;
    den = ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-9) * r +
               1.84631831751005468180e-6) *
                  r +
              7.86869131145613259100e-4) *
                 r +
             1.48753612908506148525e-2) *
                r +
            1.36929880922735805310e-1) *
               r +
           5.99832206555887937690e-1) *
              r +
          1.0;
  }
  const double value = num / den;
  return (q < 0.0) ? -value : value;
}

double Rng::normal() noexcept { return std_normal_quantile(uniform_oo()); }

namespace {

// Lower series: P(k,x) = x^k e^-x / Gamma(k+1) * sum_m x^m / ((k+1)...(k+m))
double gamma_p_series(double k, double x) {
  double ap = k;
  double term = 1.0 / k;
  double sum = term;
  for (int it = 0; it < 500; ++it) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * std::numeric_limits<double>::epsilon())
      return sum * std::exp(-x + k * std::log(x) - std::lgamma(k));
  }
  throw std::runtime_error("regularized_gamma_p: series did not converge (k=" +
                           std::to_string(k) + ", x=" + std::to_string(x) + ")");
}

// Continued fraction for Q(k,x) = 1 - P(k,x), modified Lentz.
double gamma_q_cf(double k, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - k;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - k);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps)
      return std::exp(-x + k * std::log(x) - std::lgamma(k)) * h;
  }
  throw std::runtime_error(
      "regularized_gamma_p: continued fraction did not converge (k=" +
      std::to_string(k) + ", x=" + std::to_string(x) + ")");
}

}  // namespace

double regularized_gamma_p(double k, double x) {
  if (!(k > 0.0))
    throw std::domain_error("regularized_gamma_p: shape must be positive, got " +
                            std::to_string(k));
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("regularized_gamma_p: x must be >= 0, got " +
                            std::to_string(x));
  if (x == 0.0) return 0.0;
  if (x < k + 1.0) return gamma_p_series(k, x);
  return 1.0 - gamma_q_cf(k, x);
}

double weibull_quantile(double u, double k) {
  if (!(k > 0.0))
    throw std::domain_error("weibull_quantile: shape must be positive, got " +
                            std::to_string(k));
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("weibull_quantile: u must lie in [0,1), got " +
                            std::to_string(u));
  const double t = -std::log1p(-u);
  if (k == 1.0) return t;
  if (k == 2.0) return std::sqrt(t);
  if (k == 4.0) return std::sqrt(std::sqrt(t));
  return std::pow(t, 1.0 / k);
}

double gamma_quantile(double u, double k) {
  if (!(k > 0.0))
    throw std::domain_error("gamma_quantile: shape must be positive, got " +
                            std::to_string(k));
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("gamma_quantile: u must lie in [0,1), got " +
                            std::to_string(u));
  if (u == 0.0) return 0.0;
  if (k == 1.0) return -std::log1p(-u);  // exponential: exact inverse

  constexpr double tol = 1e-10;
  constexpr int max_iter = 200;

  // Wilson-Hilferty starting point.
  const double z = std_normal_quantile(u);
  const double c = 1.0 / (9.0 * k);
  double w = 1.0 - c + z * std::sqrt(c);
  double x = (w > 0.0) ? k * w * w * w : k * std::exp(z / std::sqrt(k));
  if (!(x > 0.0)) x = k;

  // Newton on P(k,x) - u with a shrinking bracket; bisect whenever the
  // Newton step leaves the bracket.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  const double lg = std::lgamma(k);
  for (int it = 0; it < max_iter; ++it) {
    const double f = regularized_gamma_p(k, x) - u;
    if (std::fabs(f) <= tol) return x;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double logpdf = (k - 1.0) * std::log(x) - x - lg;
    double next = x - f * std::exp(-logpdf);
    if (!(next > lo && next < hi))
      next = std::isinf(hi) ? 2.0 * x : 0.5 * (lo + hi);
    if (next == x) return x;
    x = next;
  }
  throw std::runtime_error("gamma_quantile: no convergence for u=" +
                           std::to_string(u) + ", k=" + std::to_string(k));
}

}  // namespace maxboot
