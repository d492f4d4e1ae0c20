#include "maxboot/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "maxboot/parallel.hpp"

namespace maxboot {

namespace {

// Draw index b is folded into bits 33+ of the stream id, leaving the low
// bits for caller-level replication indices (see simulation.cpp).
constexpr unsigned kDrawStreamShift = 33;

struct CenteredData {
  std::size_t n = 0, p = 0;
  std::vector<double> rows;       // row-major, centered unless !centered
  std::vector<double> shift;      // sqrt(n) * t_j
  double inv_sqrt_n = 0.0;
};

CenteredData prepare(const SampleMatrix& X, const ShiftVector& t, bool centered) {
  if (t.size() != X.p())
    throw std::invalid_argument("t has length " + std::to_string(t.size()) +
                                " but X has p = " + std::to_string(X.p()) +
                                " columns");
  CenteredData data;
  data.n = X.n();
  data.p = X.p();
  data.rows = X.values();
  if (centered) {
    const std::vector<double> mean = column_means(X);
    for (std::size_t i = 0; i < data.n; ++i) {
      double* row = data.rows.data() + i * data.p;
      for (std::size_t j = 0; j < data.p; ++j) row[j] -= mean[j];
    }
  }
  const double sqrt_n = std::sqrt(static_cast<double>(data.n));
  data.inv_sqrt_n = 1.0 / sqrt_n;
  data.shift.resize(data.p);
  for (std::size_t j = 0; j < data.p; ++j) data.shift[j] = sqrt_n * t[j];
  return data;
}

// acc holds the raw column sums of the resampled/reweighted rows; finish
// by scaling, shifting, and taking the (abs-)max.
double finish_draw(const CenteredData& data, const std::vector<double>& acc,
                   bool abs_variant) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < data.p; ++j) {
    const double v = acc[j] * data.inv_sqrt_n + data.shift[j];
    const double candidate = abs_variant ? std::max(v, -v) : v;
    best = std::max(best, candidate);
  }
  return best;
}

double draw_empirical(const CenteredData& data, bool abs_variant,
                      std::vector<double>& acc, Rng& rng) {
  std::fill(acc.begin(), acc.end(), 0.0);
  for (std::size_t i = 0; i < data.n; ++i) {
    const double* row =
        data.rows.data() + static_cast<std::size_t>(rng.below(data.n)) * data.p;
    for (std::size_t j = 0; j < data.p; ++j) acc[j] += row[j];
  }
  return finish_draw(data, acc, abs_variant);
}

double draw_multiplier(const CenteredData& data, const WeightSampler& sampler,
                       bool abs_variant, std::vector<double>& acc, Rng& rng) {
  std::fill(acc.begin(), acc.end(), 0.0);
  for (std::size_t i = 0; i < data.n; ++i) {
    const double w = sampler(rng);
    const double* row = data.rows.data() + i * data.p;
    for (std::size_t j = 0; j < data.p; ++j) acc[j] += w * row[j];
  }
  return finish_draw(data, acc, abs_variant);
}

void check_scheme(const BootstrapScheme& scheme) {
  if (scheme.num_boot == 0)
    throw std::invalid_argument("bootstrap scheme: num_boot must be >= 1");
  if (scheme.kind == BootstrapScheme::Kind::empirical && !scheme.centered)
    throw std::invalid_argument(
        "bootstrap scheme: the uncentered variant applies to multiplier "
        "schemes only");
  if (scheme.kind == BootstrapScheme::Kind::multiplier)
    validate_weight_family(scheme.family);
}

}  // namespace

double empirical_bootstrap_stat(const SampleMatrix& X, const ShiftVector& t,
                                Rng& rng) {
  const CenteredData data = prepare(X, t, /*centered=*/true);
  std::vector<double> acc(data.p);
  return draw_empirical(data, /*abs_variant=*/false, acc, rng);
}

double multiplier_bootstrap_stat(const SampleMatrix& X, const ShiftVector& t,
                                 const WeightFamily& family, Rng& rng) {
  const CenteredData data = prepare(X, t, /*centered=*/true);
  const WeightSampler sampler(family);
  std::vector<double> acc(data.p);
  return draw_multiplier(data, sampler, /*abs_variant=*/false, acc, rng);
}

CriticalValueResult critical_value(const SampleMatrix& X, const ShiftVector& t,
                                   double alpha, const BootstrapScheme& scheme,
                                   RngStream seed,
                                   const CriticalValueOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("critical_value: alpha must lie in (0,1), got " +
                                std::to_string(alpha));
  check_scheme(scheme);
  const std::size_t b_total = scheme.num_boot;
  if (b_total > (std::size_t{1} << 30))
    throw std::invalid_argument("critical_value: num_boot too large");

  const CenteredData data = prepare(X, t, scheme.centered);
  const bool is_empirical = scheme.kind == BootstrapScheme::Kind::empirical;
  const WeightSampler sampler(is_empirical ? WeightFamily::gaussian_weights()
                                           : scheme.family);

  std::vector<double> draws(b_total);
  const unsigned threads = std::max(1u, options.threads);
  parallel_for_index(b_total, threads, [&](std::size_t b) {
    thread_local std::vector<double> acc;
    acc.resize(data.p);
    Rng rng(seed.with_stream(seed.stream ^ (static_cast<std::uint64_t>(b)
                                            << kDrawStreamShift)));
    draws[b] = is_empirical
                   ? draw_empirical(data, scheme.abs_variant, acc, rng)
                   : draw_multiplier(data, sampler, scheme.abs_variant, acc, rng);
  });

  CriticalValueResult result;
  result.alpha = alpha;
  result.scheme = scheme;
  result.seed = seed;
  if (options.retain_draws && draws.size() <= options.max_retained)
    result.draws_retained = draws;
  result.critical_value = empirical_quantile(std::move(draws), 1.0 - alpha);
  return result;
}

CriticalValueResult gaussian_critical_value(const SampleMatrix& X,
                                            const ShiftVector& t, double alpha,
                                            std::size_t num_boot, RngStream seed,
                                            const CriticalValueOptions& options) {
  return critical_value(
      X, t, alpha,
      BootstrapScheme::multiplier(WeightFamily::gaussian_weights(), num_boot),
      seed, options);
}

TestDecision decide(double statistic, const CriticalValueResult& cv, double eta) {
  if (!(eta >= 0.0))
    throw std::invalid_argument("decide: eta must be >= 0, got " +
                                std::to_string(eta));
  TestDecision d;
  d.statistic = statistic;
  d.critical_value = cv.critical_value;
  d.eta = eta;
  d.reject = statistic > cv.critical_value + eta;
  return d;
}

bool exact_enumeration_supported(const BootstrapScheme& scheme, std::size_t n) {
  if (scheme.kind == BootstrapScheme::Kind::empirical)
    return n <= kMaxExactEmpiricalN;
  return scheme.family.kind == WeightFamily::Kind::rademacher &&
         n <= kMaxExactRademacherN;
}

std::vector<double> exact_conditional_draws(const SampleMatrix& X,
                                            const ShiftVector& t,
                                            const BootstrapScheme& scheme) {
  if (scheme.kind == BootstrapScheme::Kind::multiplier)
    validate_weight_family(scheme.family);
  if (!exact_enumeration_supported(scheme, X.n()))
    throw std::invalid_argument(
        "exact enumeration supports empirical bootstrap for n <= " +
        std::to_string(kMaxExactEmpiricalN) +
        " and rademacher multipliers for n <= " +
        std::to_string(kMaxExactRademacherN) + " (got n = " +
        std::to_string(X.n()) + ")");
  const CenteredData data = prepare(X, t, scheme.centered);
  const std::size_t n = data.n, p = data.p;
  std::vector<double> acc(p);
  std::vector<double> draws;

  if (scheme.kind == BootstrapScheme::Kind::empirical) {
    // Odometer over all n^n resample index tuples.
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n;
    draws.reserve(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t cell = 0; cell < total; ++cell) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double* row = data.rows.data() + idx[i] * p;
        for (std::size_t j = 0; j < p; ++j) acc[j] += row[j];
      }
      draws.push_back(finish_draw(data, acc, scheme.abs_variant));
      for (std::size_t i = 0; i < n; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
    }
  } else {
    const std::size_t total = std::size_t{1} << n;
    draws.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double w = (mask >> i) & 1u ? 1.0 : -1.0;
        const double* row = data.rows.data() + i * p;
        for (std::size_t j = 0; j < p; ++j) acc[j] += w * row[j];
      }
      draws.push_back(finish_draw(data, acc, scheme.abs_variant));
    }
  }
  return draws;
}

CriticalValueResult exact_critical_value(const SampleMatrix& X,
                                         const ShiftVector& t, double alpha,
                                         const BootstrapScheme& scheme) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("critical_value: alpha must lie in (0,1), got " +
                                std::to_string(alpha));
  CriticalValueResult result;
  result.alpha = alpha;
  result.scheme = scheme;
  result.exact = true;
  result.critical_value =
      empirical_quantile(exact_conditional_draws(X, t, scheme), 1.0 - alpha);
  return result;
}

std::vector<std::pair<double, double>> atoms_from_draws(
    const std::vector<double>& draws, double merge_eps) {
  if (draws.empty()) return {};
  std::vector<double> sorted = draws;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> atoms;
  const double weight = 1.0 / static_cast<double>(sorted.size());
  atoms.emplace_back(sorted.front(), weight);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - atoms.back().first <= merge_eps)
      atoms.back().second += weight;
    else
      atoms.emplace_back(sorted[i], weight);
  }
  return atoms;
}

}  // namespace maxboot
