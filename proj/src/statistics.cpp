#include "maxboot/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxboot {

SampleMatrix::SampleMatrix(std::size_t n, std::size_t p)
    : n_(n), p_(p), values_(n * p, 0.0) {
  if (n == 0) throw std::invalid_argument("SampleMatrix: n must be >= 1");
  if (p == 0) throw std::invalid_argument("SampleMatrix: p must be >= 1");
}

SampleMatrix::SampleMatrix(std::size_t n, std::size_t p, std::vector<double> values)
    : n_(n), p_(p), values_(std::move(values)) {
  if (n == 0) throw std::invalid_argument("SampleMatrix: n must be >= 1");
  if (p == 0) throw std::invalid_argument("SampleMatrix: p must be >= 1");
  if (values_.size() != n * p)
    throw std::invalid_argument("SampleMatrix: expected " + std::to_string(n * p) +
                                " values for a " + std::to_string(n) + "x" +
                                std::to_string(p) + " matrix, got " +
                                std::to_string(values_.size()));
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (!std::isfinite(values_[idx]))
      throw std::invalid_argument(
          "SampleMatrix: non-finite entry at row " + std::to_string(idx / p + 1) +
          ", column " + std::to_string(idx % p + 1));
  }
}

SampleMatrix SampleMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("SampleMatrix: n must be >= 1");
  const std::size_t p = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p)
      throw std::invalid_argument("SampleMatrix: row " + std::to_string(i + 1) +
                                  " has " + std::to_string(rows[i].size()) +
                                  " columns, expected " + std::to_string(p));
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return SampleMatrix(rows.size(), p, std::move(values));
}

double CovarianceEstimate::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = j + 1; k < p; ++k)
      worst = std::max(worst, std::fabs((*this)(j, k) - (*this)(k, j)));
  return worst;
}

namespace {

void check_length(std::size_t got, std::size_t p, const char* name) {
  if (got != p)
    throw std::invalid_argument(std::string(name) + " has length " +
                                std::to_string(got) + " but X has p = " +
                                std::to_string(p) + " columns");
}

// Kahan-compensated column sums of X.
std::vector<double> column_sums(const SampleMatrix& X) {
  const std::size_t n = X.n(), p = X.p();
  std::vector<double> sum(p, 0.0), comp(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = X.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double y = row[j] - comp[j];
      const double t = sum[j] + y;
      comp[j] = (t - sum[j]) - y;
      sum[j] = t;
    }
  }
  return sum;
}

// Scaled, centered, shifted column statistics v_j = n^{-1/2} sum_i (X_ij - mu_j + t_j).
std::vector<double> column_statistics(const SampleMatrix& X, const MeanVector& mu,
                                      const ShiftVector& t) {
  check_length(mu.size(), X.p(), "mu");
  check_length(t.size(), X.p(), "t");
  std::vector<double> v = column_sums(X);
  const double n = static_cast<double>(X.n());
  const double inv_sqrt_n = 1.0 / std::sqrt(n);
  for (std::size_t j = 0; j < X.p(); ++j)
    v[j] = (v[j] - n * (mu[j] - t[j])) * inv_sqrt_n;
  return v;
}

}  // namespace

double max_statistic(const SampleMatrix& X, const MeanVector& mu,
                     const ShiftVector& t) {
  const std::vector<double> v = column_statistics(X, mu, t);
  return *std::max_element(v.begin(), v.end());
}

double max_abs_statistic(const SampleMatrix& X, const MeanVector& mu,
                         const ShiftVector& t) {
  const std::vector<double> v = column_statistics(X, mu, t);
  double best = -std::numeric_limits<double>::infinity();
  for (double vj : v) best = std::max(best, std::max(vj, -vj));
  return best;
}

double empirical_quantile(std::vector<double> samples, double gamma) {
  if (samples.empty())
    throw std::invalid_argument("empirical_quantile: empty sample multiset");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("empirical_quantile: gamma must lie in (0,1), got " +
                                std::to_string(gamma));
  const std::size_t b = samples.size();
  // Smallest m in [1,B] with m/B >= gamma, evaluated through the same
  // division the empirical CDF uses so that e.g. gamma=0.9, B=10 gives
  // m=9 rather than tripping over the rounding of 0.9*10.
  std::size_t lo = 1, hi = b;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (static_cast<double>(mid) / static_cast<double>(b) >= gamma)
      hi = mid;
    else
      lo = mid + 1;
  }
  std::nth_element(samples.begin(), samples.begin() + (lo - 1), samples.end());
  return samples[lo - 1];
}

std::vector<double> column_means(const SampleMatrix& X) {
  std::vector<double> m = column_sums(X);
  const double inv_n = 1.0 / static_cast<double>(X.n());
  for (double& mj : m) mj *= inv_n;
  return m;
}

CovarianceEstimate covariance_estimate(const SampleMatrix& X) {
  const std::size_t n = X.n(), p = X.p();
  const std::vector<double> mean = column_means(X);
  CovarianceEstimate cov;
  cov.p = p;
  cov.values.assign(p * p, 0.0);
  std::vector<double> centered(p);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = X.row(i);
    for (std::size_t j = 0; j < p; ++j) centered[j] = row[j] - mean[j];
    for (std::size_t j = 0; j < p; ++j) {
      const double cj = centered[j];
      double* out = cov.values.data() + j * p;
      for (std::size_t k = j; k < p; ++k) out[k] += cj * centered[k];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = j; k < p; ++k) {
      const double s = cov.values[j * p + k] * inv_n;
      cov.values[j * p + k] = s;
      cov.values[k * p + j] = s;
    }
  return cov;
}

}  // namespace maxboot
