#pragma once

#include <cstddef>
#include <vector>

#include "maxboot/distributions.hpp"
#include "maxboot/rng.hpp"
#include "maxboot/statistics.hpp"
#include "maxboot/types.hpp"

namespace maxboot {

/// How bootstrap draws of T* are produced.
///  - empirical:  rows resampled i.i.d. uniformly from the centered data
///  - multiplier: centered rows scaled by i.i.d. weights from `family`
/// abs_variant switches every draw (and the paired statistic) to the
/// 2p-dimensional absolute-value form. centered=false gives the uncentered
/// multiplier statistic max_j n^{-1/2} sum_i (e_i X_ij + t_j), of interest
/// with Rademacher weights on symmetric data; the default is centered.
struct BootstrapScheme {
  enum class Kind { empirical, multiplier };

  Kind kind = Kind::multiplier;
  WeightFamily family;
  std::size_t num_boot = 500;
  bool abs_variant = false;
  bool centered = true;

  static BootstrapScheme empirical(std::size_t num_boot, bool abs_variant = false) {
    BootstrapScheme s;
    s.kind = Kind::empirical;
    s.num_boot = num_boot;
    s.abs_variant = abs_variant;
    return s;
  }
  static BootstrapScheme multiplier(WeightFamily family, std::size_t num_boot,
                                    bool abs_variant = false) {
    BootstrapScheme s;
    s.kind = Kind::multiplier;
    s.family = family;
    s.num_boot = num_boot;
    s.abs_variant = abs_variant;
    return s;
  }
};

struct CriticalValueResult {
  double critical_value = 0.0;
  double alpha = 0.0;
  BootstrapScheme scheme;
  RngStream seed;
  bool exact = false;  // enumeration oracle instead of B random draws
  std::vector<double> draws_retained;
};

/// reject <=> statistic > critical_value + eta (strict).
struct TestDecision {
  double statistic = 0.0;
  double critical_value = 0.0;
  double eta = 0.0;
  bool reject = false;
};

/// One conditional draw of the empirical-bootstrap statistic
///   T* = max_j n^{-1/2} sum_i (X*_ij + t_j),
/// rows X*_i sampled uniformly with replacement from {X_i - Xbar}.
double empirical_bootstrap_stat(const SampleMatrix& X, const ShiftVector& t,
                                Rng& rng);

/// One conditional draw of the multiplier-bootstrap statistic with fresh
/// i.i.d. weights: T* = max_j n^{-1/2} sum_i (e_i (X_ij - Xbar_j) + t_j).
double multiplier_bootstrap_stat(const SampleMatrix& X, const ShiftVector& t,
                                 const WeightFamily& family, Rng& rng);

struct CriticalValueOptions {
  bool retain_draws = false;
  std::size_t max_retained = std::size_t{1} << 20;  // memory budget for draws
  unsigned threads = 1;
};

/// Bootstrap critical value: the (1-alpha)th empirical quantile of
/// B = scheme.num_boot conditional draws. Draw b consumes the stream
/// seed.stream ^ (b << 33), so the result is identical for any thread
/// count and any scheduling of the draws.
CriticalValueResult critical_value(const SampleMatrix& X, const ShiftVector& t,
                                   double alpha, const BootstrapScheme& scheme,
                                   RngStream seed,
                                   const CriticalValueOptions& options = {});

/// Feasible Gaussian critical value: the multiplier bootstrap with
/// gaussian weights (same conditional distribution as max_j(G_j + t_j)
/// with G ~ N(0, Sigma_hat)).
CriticalValueResult gaussian_critical_value(const SampleMatrix& X,
                                            const ShiftVector& t, double alpha,
                                            std::size_t num_boot, RngStream seed,
                                            const CriticalValueOptions& options = {});

/// Test decision with infinitesimal factor eta >= 0.
TestDecision decide(double statistic, const CriticalValueResult& cv,
                    double eta = 0.0);

// Exact-enumeration oracle: all n^n resamples (empirical) or all 2^n sign
// patterns (rademacher multiplier), each equally likely.
constexpr std::size_t kMaxExactEmpiricalN = 8;
constexpr std::size_t kMaxExactRademacherN = 12;

bool exact_enumeration_supported(const BootstrapScheme& scheme, std::size_t n);

/// Every outcome of the conditional law of T* under the scheme,
/// one entry per enumeration cell (equally probable, duplicates kept).
std::vector<double> exact_conditional_draws(const SampleMatrix& X,
                                            const ShiftVector& t,
                                            const BootstrapScheme& scheme);

/// Exact bootstrap critical value from the full enumeration.
CriticalValueResult exact_critical_value(const SampleMatrix& X,
                                         const ShiftVector& t, double alpha,
                                         const BootstrapScheme& scheme);

/// Collapses a list of equally-likely outcomes into (value, probability)
/// atoms, merging values closer than `merge_eps`.
std::vector<std::pair<double, double>> atoms_from_draws(
    const std::vector<double>& draws, double merge_eps = 1e-12);

}  // namespace maxboot
