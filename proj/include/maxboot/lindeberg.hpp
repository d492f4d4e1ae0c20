#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "maxboot/rng.hpp"

namespace maxboot {

/// One draw of the randomized Lindeberg interpolation for item k: a
/// uniform permutation sigma places k at position pos = sigma^{-1}(k);
/// items before pos contribute their X row, items after pos their Y row,
/// and item k contributes X_k iff U <= pos/(n+1). The realized selector
/// epsilon satisfies w = sum_i (eps_i X_i + (1-eps_i) Y_i).
struct InterpolationDraw {
  std::size_t k = 1;                  // 1-based item index
  std::vector<std::uint8_t> epsilon;  // n entries in {0,1}
  std::vector<double> w;              // p-vector
};

InterpolationDraw lindeberg_draw(const std::vector<std::vector<double>>& x_rows,
                                 const std::vector<std::vector<double>>& y_rows,
                                 std::size_t k, Rng& rng);

/// Selector vector alone (law independent of the item index).
std::vector<std::uint8_t> lindeberg_epsilon_draw(std::size_t n, Rng& rng);

/// Histogram of sum(eps) over `reps` draws; the exact law puts mass
/// 1/(n+1) on each of s = 0..n.
struct EpsilonLawResult {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::vector<std::uint64_t> counts;  // counts[s], s = 0..n
  double exact_atom = 0.0;            // 1/(n+1)
};

EpsilonLawResult lindeberg_epsilon_law(std::size_t n, std::size_t reps, Rng& rng);

/// Exact law of the selector over the n!*(n+1) equiprobable
/// (permutation, U-interval) cells for item k: cell counts per epsilon
/// bitmask (bit i = eps_{i+1}). Every pattern with |S| = s ones must get
/// exactly s!(n-s)! cells. Supported for n <= 12.
struct SubsetLaw {
  std::size_t n = 0;
  std::uint64_t total_cells = 0;              // n! * (n+1)
  std::vector<std::uint64_t> pattern_cells;   // size 2^n
};

SubsetLaw lindeberg_exact_subset_law(std::size_t n, std::size_t k);

/// Exact law of W_k for scalar rows x, y: (value, probability) atoms
/// aggregated over selector patterns, sorted by value.
std::vector<std::pair<double, double>> lindeberg_exact_wk_law(
    const std::vector<double>& x, const std::vector<double>& y, std::size_t k);

/// Monte Carlo check of the exchangeable weighted-sum tail bound
///   P(|sum a_i X_i| > |sum a_i| + t) <= 2 exp(-t^2 / (32 sum a_i^2))
/// with the exchangeable sequence realized as a uniform random
/// permutation of value_pool (entries must satisfy |x| <= 1).
struct TailCheckReport {
  std::vector<double> weights;
  double threshold = 0.0;
  double empirical_tail = 0.0;
  double bound = 0.0;
  std::size_t reps = 0;
};

TailCheckReport exchangeable_tail_check(const std::vector<double>& a,
                                        const std::vector<double>& value_pool,
                                        double t, std::size_t reps, Rng& rng);

}  // namespace maxboot
