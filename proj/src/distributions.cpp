#include "maxboot/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maxboot {

double third_order_gamma_max() { return 0.5 - 0.5 / std::sqrt(5.0); }

ThirdOrderParams third_order_params(double gamma) {
  const double upper = third_order_gamma_max();
  if (!(gamma > 0.0 && gamma < upper))
    throw std::domain_error(
        "third_order_params: gamma must lie in (0, 1/2 - 1/(2*sqrt(5))) = (0, " +
        std::to_string(upper) + "), got " + std::to_string(gamma));
  const double one_m = 1.0 - gamma;
  const double one_m2 = 1.0 - 2.0 * gamma;
  const double sigma2 =
      1.0 - std::cbrt(one_m * gamma) / std::cbrt(one_m2 * one_m2);
  ThirdOrderParams params;
  params.gamma = gamma;
  params.sigma = std::sqrt(sigma2);
  params.a = std::cbrt(one_m * one_m) / std::cbrt(gamma * one_m2);
  params.b = -std::cbrt(gamma * gamma) / std::cbrt(one_m * one_m2);
  return params;
}

void validate_weight_family(const WeightFamily& family) {
  switch (family.kind) {
    case WeightFamily::Kind::gaussian:
    case WeightFamily::Kind::rademacher:
      return;
    case WeightFamily::Kind::third_order:
      third_order_params(family.gamma);  // throws on bad gamma
      return;
    case WeightFamily::Kind::beta:
      if (!(family.alpha > 0.0))
        throw std::domain_error("beta weights: alpha must be > 0, got " +
                                std::to_string(family.alpha));
      if (!(family.beta > 0.0))
        throw std::domain_error("beta weights: beta must be > 0, got " +
                                std::to_string(family.beta));
      if (!(family.v >= 0.0 && family.v <= 1.0))
        throw std::domain_error("beta weights: v must lie in [0,1], got " +
                                std::to_string(family.v));
      return;
  }
  throw std::domain_error("unknown weight family");
}

WeightSampler::WeightSampler(const WeightFamily& family) : family_(family) {
  validate_weight_family(family);
  if (family.kind == WeightFamily::Kind::third_order) {
    const ThirdOrderParams p = third_order_params(family.gamma);
    sigma_ = p.sigma;
    a_ = p.a;
    b_ = p.b;
  } else if (family.kind == WeightFamily::Kind::beta) {
    beta_scale_ = std::sqrt(1.0 - family.v) *
                  std::sqrt((family.alpha + family.beta + 1.0) /
                            (family.alpha * family.beta));
    sqrt_v_ = std::sqrt(family.v);
  }
}

double WeightSampler::operator()(Rng& rng) const {
  switch (family_.kind) {
    case WeightFamily::Kind::gaussian:
      return rng.normal();
    case WeightFamily::Kind::rademacher:
      return (rng.next_u64() & 1ull) ? 1.0 : -1.0;
    case WeightFamily::Kind::third_order: {
      // Gaussian component first, then the two-point component.
      const double g = sigma_ * rng.normal();
      return g + ((rng.uniform() < family_.gamma) ? a_ : b_);
    }
    case WeightFamily::Kind::beta: {
      double e = 0.0;
      if (family_.v > 0.0) e = sqrt_v_ * rng.normal();
      if (family_.v < 1.0) {
        const double eta = beta_variate(rng, family_.alpha, family_.beta);
        e += beta_scale_ * ((family_.alpha + family_.beta) * eta - family_.alpha);
      }
      return e;
    }
  }
  return 0.0;  // unreachable
}

double sample_weight(const WeightFamily& family, Rng& rng) {
  return WeightSampler(family)(rng);
}

double gamma_variate(Rng& rng, double shape) {
  if (!(shape > 0.0))
    throw std::domain_error("gamma_variate: shape must be positive, got " +
                            std::to_string(shape));
  if (shape < 1.0) {
    // boost: G(k) = G(k+1) * U^{1/k}
    const double u = rng.uniform_oo();
    return gamma_variate(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_oo();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_variate(Rng& rng, double alpha, double beta) {
  const double x = gamma_variate(rng, alpha);
  const double y = gamma_variate(rng, beta);
  return x / (x + y);
}

SampleMatrix gen_ar1_gaussian_rows(std::size_t n, std::size_t p, double rho,
                                   Rng& rng) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::domain_error("gen_ar1_gaussian_rows: rho must lie in [0,1), got " +
                            std::to_string(rho));
  SampleMatrix out(n, p);
  const double innovation = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = out.row(i);
    double y = rng.normal();
    row[0] = y;
    for (std::size_t j = 1; j < p; ++j) {
      y = rho * y + innovation * rng.normal();
      row[j] = y;
    }
  }
  return out;
}

}  // namespace maxboot
