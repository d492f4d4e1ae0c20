#include "maxboot/lindeberg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace maxboot {

namespace {

// sigma as a vector: sigma[pos-1] = item placed at position pos (0-based
// storage of a 1-based notion). Returns epsilon for item k given the
// permutation and the U draw.
std::vector<std::uint8_t> epsilon_from_cells(const std::vector<std::size_t>& sigma,
                                             std::size_t k, bool u_below) {
  const std::size_t n = sigma.size();
  std::vector<std::uint8_t> eps(n, 0);
  std::size_t pos = 0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (sigma[idx] == k) {
      pos = idx + 1;
      break;
    }
  }
  for (std::size_t idx = 0; idx + 1 < pos; ++idx) eps[sigma[idx] - 1] = 1;
  eps[k - 1] = u_below ? 1 : 0;
  return eps;
}

std::vector<std::uint8_t> draw_epsilon(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{1});
  shuffle(sigma.data(), n, rng);
  std::size_t pos = 0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (sigma[idx] == k) {
      pos = idx + 1;
      break;
    }
  }
  const double u = rng.uniform();
  const bool u_below =
      u <= static_cast<double>(pos) / static_cast<double>(n + 1);
  return epsilon_from_cells(sigma, k, u_below);
}

}  // namespace

InterpolationDraw lindeberg_draw(const std::vector<std::vector<double>>& x_rows,
                                 const std::vector<std::vector<double>>& y_rows,
                                 std::size_t k, Rng& rng) {
  const std::size_t n = x_rows.size();
  if (n == 0) throw std::invalid_argument("lindeberg_draw: n must be >= 1");
  if (y_rows.size() != n)
    throw std::invalid_argument("lindeberg_draw: x_rows has " + std::to_string(n) +
                                " rows but y_rows has " +
                                std::to_string(y_rows.size()));
  if (k < 1 || k > n)
    throw std::invalid_argument("lindeberg_draw: k must lie in 1.." +
                                std::to_string(n) + ", got " + std::to_string(k));
  const std::size_t p = x_rows.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x_rows[i].size() != p || y_rows[i].size() != p)
      throw std::invalid_argument("lindeberg_draw: row " + std::to_string(i + 1) +
                                  " dimension mismatch");
  }

  InterpolationDraw draw;
  draw.k = k;
  draw.epsilon = draw_epsilon(n, k, rng);
  draw.w.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& row = draw.epsilon[i] ? x_rows[i] : y_rows[i];
    for (std::size_t j = 0; j < p; ++j) draw.w[j] += row[j];
  }
  return draw;
}

std::vector<std::uint8_t> lindeberg_epsilon_draw(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("lindeberg_epsilon_draw: n must be >= 1");
  return draw_epsilon(n, 1, rng);
}

EpsilonLawResult lindeberg_epsilon_law(std::size_t n, std::size_t reps, Rng& rng) {
  if (n == 0) throw std::invalid_argument("lindeberg_epsilon_law: n must be >= 1");
  if (reps == 0)
    throw std::invalid_argument("lindeberg_epsilon_law: reps must be >= 1");
  EpsilonLawResult result;
  result.n = n;
  result.reps = reps;
  result.counts.assign(n + 1, 0);
  result.exact_atom = 1.0 / static_cast<double>(n + 1);
  for (std::size_t r = 0; r < reps; ++r) {
    const std::vector<std::uint8_t> eps = draw_epsilon(n, 1, rng);
    std::size_t s = 0;
    for (std::uint8_t e : eps) s += e;
    ++result.counts[s];
  }
  return result;
}

SubsetLaw lindeberg_exact_subset_law(std::size_t n, std::size_t k) {
  if (n == 0 || n > 12)
    throw std::invalid_argument(
        "lindeberg_exact_subset_law: n must lie in 1..12, got " +
        std::to_string(n));
  if (k < 1 || k > n)
    throw std::invalid_argument("lindeberg_exact_subset_law: k must lie in 1.." +
                                std::to_string(n));
  SubsetLaw law;
  law.n = n;
  law.pattern_cells.assign(std::size_t{1} << n, 0);

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{1});
  // U matters only through which of the n+1 intervals
  // [s/(n+1), (s+1)/(n+1)) it lands in; cell u has U <= pos/(n+1)
  // exactly when u < pos.
  do {
    std::size_t pos = 0;
    for (std::size_t idx = 0; idx < n; ++idx)
      if (sigma[idx] == k) pos = idx + 1;
    for (std::size_t u = 0; u <= n; ++u) {
      const std::vector<std::uint8_t> eps = epsilon_from_cells(sigma, k, u < pos);
      std::size_t mask = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (eps[i]) mask |= (std::size_t{1} << i);
      ++law.pattern_cells[mask];
      ++law.total_cells;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return law;
}

std::vector<std::pair<double, double>> lindeberg_exact_wk_law(
    const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
  const std::size_t n = x.size();
  if (y.size() != n)
    throw std::invalid_argument("lindeberg_exact_wk_law: x has " +
                                std::to_string(n) + " entries but y has " +
                                std::to_string(y.size()));
  const SubsetLaw law = lindeberg_exact_subset_law(n, k);
  std::map<double, double> atoms;
  for (std::size_t mask = 0; mask < law.pattern_cells.size(); ++mask) {
    if (law.pattern_cells[mask] == 0) continue;
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      w += ((mask >> i) & 1u) ? x[i] : y[i];
    atoms[w] += static_cast<double>(law.pattern_cells[mask]) /
                static_cast<double>(law.total_cells);
  }
  return {atoms.begin(), atoms.end()};
}

TailCheckReport exchangeable_tail_check(const std::vector<double>& a,
                                        const std::vector<double>& value_pool,
                                        double t, std::size_t reps, Rng& rng) {
  const std::size_t n = a.size();
  if (n == 0)
    throw std::invalid_argument("exchangeable_tail_check: weights are empty");
  if (value_pool.size() != n)
    throw std::invalid_argument("exchangeable_tail_check: weights have " +
                                std::to_string(n) + " entries but pool has " +
                                std::to_string(value_pool.size()));
  if (!(t > 0.0))
    throw std::invalid_argument("exchangeable_tail_check: t must be > 0, got " +
                                std::to_string(t));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::fabs(value_pool[i]) <= 1.0))
      throw std::invalid_argument("exchangeable_tail_check: pool entry " +
                                  std::to_string(i + 1) + " = " +
                                  std::to_string(value_pool[i]) +
                                  " violates |x| <= 1");
  }
  if (reps == 0)
    throw std::invalid_argument("exchangeable_tail_check: reps must be >= 1");

  double sum_a = 0.0, sum_a2 = 0.0;
  for (double ai : a) {
    sum_a += ai;
    sum_a2 += ai * ai;
  }

  TailCheckReport report;
  report.weights = a;
  report.threshold = t;
  report.reps = reps;
  // Degenerate weights: the sum is identically 0, so the tail is 0;
  // report bound 0 instead of dividing by zero.
  report.bound =
      (sum_a2 > 0.0) ? 2.0 * std::exp(-t * t / (32.0 * sum_a2)) : 0.0;

  const double cutoff = std::fabs(sum_a) + t;
  std::vector<double> pool = value_pool;
  std::size_t exceed = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    shuffle(pool.data(), n, rng);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * pool[i];
    if (std::fabs(s) > cutoff) ++exceed;
  }
  report.empirical_tail =
      static_cast<double>(exceed) / static_cast<double>(reps);
  return report;
}

}  // namespace maxboot
