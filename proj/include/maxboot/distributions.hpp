#pragma once

#include <cstddef>

#include "maxboot/rng.hpp"
#include "maxboot/types.hpp"

namespace maxboot {

/// Multiplier-weight family; every member has mean 0 and variance 1.
///  - gaussian:    N(0,1)
///  - rademacher:  uniform on {-1,+1}
///  - third_order: Gaussian + two-point mixture with E[e^3] = 1,
///                 parameter 0 < gamma < 1/2 - 1/(2*sqrt(5))
///  - beta:        zeta + sqrt(1-v) * ((alpha+beta)*eta - alpha)
///                   * sqrt((alpha+beta+1)/(alpha*beta)),
///                 zeta ~ N(0,v), eta ~ Beta(alpha,beta). Experimental;
///                 v=1 reduces to the gaussian family.
struct WeightFamily {
  enum class Kind { gaussian, rademacher, third_order, beta };

  Kind kind = Kind::gaussian;
  double gamma = 0.2;
  double alpha = 0.5;
  double beta = 1.5;
  double v = 0.0;

  static WeightFamily gaussian_weights() { return {Kind::gaussian}; }
  static WeightFamily rademacher_weights() { return {Kind::rademacher}; }
  static WeightFamily third_order_weights(double gamma) {
    WeightFamily f;
    f.kind = Kind::third_order;
    f.gamma = gamma;
    return f;
  }
  static WeightFamily beta_weights(double alpha, double beta, double v) {
    WeightFamily f;
    f.kind = Kind::beta;
    f.alpha = alpha;
    f.beta = beta;
    f.v = v;
    return f;
  }
};

/// Upper end of the admissible third-order range: 1/2 - 1/(2*sqrt(5)).
double third_order_gamma_max();

/// Closed-form parameters of the third-order family: e = e1 + e2 with
/// e1 ~ N(0, sigma^2) and e2 two-point on {a, b} with P(a) = gamma.
/// Satisfies E[e] = 0, E[e^2] = 1, E[e^3] = 1.
struct ThirdOrderParams {
  double sigma;
  double a;
  double b;
  double gamma;
};

ThirdOrderParams third_order_params(double gamma);

/// Validates a family's parameters; throws std::domain_error with the
/// admissible range on violation.
void validate_weight_family(const WeightFamily& family);

/// Repeated-draw sampler with the family's constants precomputed.
class WeightSampler {
 public:
  explicit WeightSampler(const WeightFamily& family);
  double operator()(Rng& rng) const;
  const WeightFamily& family() const { return family_; }

 private:
  WeightFamily family_;
  double sigma_ = 0.0, a_ = 0.0, b_ = 0.0;  // third_order
  double beta_scale_ = 0.0, sqrt_v_ = 0.0;  // beta
};

/// One draw from the family (validates parameters on every call; use
/// WeightSampler in loops).
double sample_weight(const WeightFamily& family, Rng& rng);

/// Gamma(shape, scale 1) variate, Marsaglia-Tsang squeeze method.
double gamma_variate(Rng& rng, double shape);

/// Beta(alpha, beta) variate via two gamma variates.
double beta_variate(Rng& rng, double alpha, double beta);

/// n independent rows, each jointly Gaussian with Toeplitz covariance
/// Sigma_{jk} = rho^{|j-k|}, generated by the exact AR(1) recursion
/// Y_1 ~ N(0,1), Y_j = rho*Y_{j-1} + sqrt(1-rho^2) * xi_j.
SampleMatrix gen_ar1_gaussian_rows(std::size_t n, std::size_t p, double rho,
                                   Rng& rng);

}  // namespace maxboot
