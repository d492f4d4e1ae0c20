#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "maxboot/bootstrap.hpp"
#include "maxboot/rng.hpp"
#include "maxboot/types.hpp"

namespace maxboot {

/// Marginal distribution for the copula designs, scale fixed at 1.
/// `degenerate` is a point mass at `shape`, kept as an internal sanity
/// hook; it is not part of the study grid.
struct MarginalSpec {
  enum class Family { weibull, gamma, degenerate };

  Family family = Family::weibull;
  double shape = 4.0;

  static MarginalSpec weibull(double k) { return {Family::weibull, k}; }
  static MarginalSpec gamma(double k) { return {Family::gamma, k}; }
  static MarginalSpec degenerate(double c) { return {Family::degenerate, c}; }

  double mean() const;
  double quantile(double u) const;
  /// Shape values used in the study: weibull {2,3,4}, gamma {1,3,5}.
  bool on_study_grid() const;
  std::string name() const;
};

/// One Monte Carlo cell: data-generating design plus the bootstrap scheme
/// and the replication budget.
struct DesignSpec {
  bool symmetric = false;  // symmetric designs difference two copula draws
  std::size_t n = 400;
  std::size_t p = 400;
  double rho = 0.0;
  MarginalSpec marginal;
  double alpha = 0.1;
  BootstrapScheme scheme;
  std::size_t num_reps = 20000;
  RngStream base_seed;

  /// Semicolon-joined list of parameters that deviate from the study's
  /// full-scale grid (empty when on-grid).
  std::string deviations() const;
};

struct RejectionEstimate {
  DesignSpec design;
  std::size_t rejections = 0;
  double rejection_rate = 0.0;
  double mc_std_error = 0.0;  // sqrt(r(1-r)/R)
  double wall_time_seconds = 0.0;
};

/// Copula data with asymmetric marginals: X_ij = F^{-1}(Phi(Y_ij)) where
/// the rows of Y are AR(1) Gaussian with correlation rho^{|j-k|}. Returns
/// the matrix together with the analytic mean vector.
std::pair<SampleMatrix, MeanVector> gen_asymmetric(std::size_t n, std::size_t p,
                                                   double rho,
                                                   const MarginalSpec& marginal,
                                                   RngStream stream);

/// Symmetrized design: X_ij = F^{-1}(Phi(Y1_ij)) - F^{-1}(Phi(Y2_ij)) with
/// two independent copies of Y on separate streams; the mean is exactly 0.
std::pair<SampleMatrix, MeanVector> gen_symmetric(std::size_t n, std::size_t p,
                                                  double rho,
                                                  const MarginalSpec& marginal,
                                                  RngStream stream);

/// Estimated rejection probability Pr(T > c_{1-alpha}) over
/// design.num_reps independent replications. Replication r uses stream
/// base ^ r for the data and base ^ r ^ 2^32 for the bootstrap draws, so
/// the result is bit-identical for any thread count.
RejectionEstimate estimate_rejection(const DesignSpec& design,
                                     unsigned threads = 1);

/// Runs every design in order, appending one CSV row per design to
/// csv_path as it completes. Designs whose key (all design columns
/// including the seed) already appears in the file are not recomputed;
/// their stored rows are returned, which makes interrupted runs
/// resumable and completed runs byte-stable.
std::vector<RejectionEstimate> run_table(const std::vector<DesignSpec>& configs,
                                         const std::string& csv_path,
                                         unsigned threads = 1,
                                         bool print_progress = false);

/// Header and row format of the run_table CSV.
std::string rejection_csv_header();
std::string rejection_csv_row(const RejectionEstimate& estimate);

/// Scheme labels used in CSV/JSON output: empirical, gaussian,
/// rademacher, mammen3, beta.
std::string scheme_label(const BootstrapScheme& scheme);
std::string scheme_params_label(const BootstrapScheme& scheme);

}  // namespace maxboot
