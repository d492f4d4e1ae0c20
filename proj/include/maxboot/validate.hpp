#pragma once

#include <string>
#include <vector>

#include "maxboot/rng.hpp"

namespace maxboot {

/// One line of the validation report.
struct CheckResult {
  std::string check;   // e.g. "epsilon-law[n=4,s=2]"
  std::string target;  // what the observed value is compared against
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidateOptions {
  std::string only;          // run a single check group; empty = all
  std::size_t n = 4;         // epsilon-law sample size
  std::size_t reps = 100000; // Monte Carlo reps for the epsilon law
  std::size_t tail_reps = 1000000;
  std::size_t moment_draws = 1000000;
  std::string family = "mammen3";  // weight-moments family
  double gamma = 0.2;
  double beta_alpha = 0.5;
  double beta_beta = 1.5;
  double beta_v = 0.0;
  RngStream seed{20260809, 0};
};

/// Known check-group names (for --only and the usage text).
const std::vector<std::string>& validation_check_names();

/// Runs the lindeberg-lab and distributions invariant suites and returns
/// one result per comparison. Every result carries its own tolerance.
std::vector<CheckResult> run_validation_suite(const ValidateOptions& options);

}  // namespace maxboot
