#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "maxboot/rng.hpp"
#include "maxboot/statistics.hpp"

using namespace maxboot;

namespace {

SampleMatrix four_by_two() {
  return SampleMatrix::from_rows({{1, 0}, {-1, 2}, {3, -2}, {1, 0}});
}

SampleMatrix random_matrix(std::size_t n, std::size_t p, Rng& rng) {
  SampleMatrix x(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.normal();
  return x;
}

}  // namespace

TEST_CASE("max_statistic on hand-enumerated fixtures") {
  SampleMatrix zero(1, 2);
  CHECK(max_statistic(zero, MeanVector::zeros(2), ShiftVector::zeros(2)) == 0.0);

  const SampleMatrix x = four_by_two();
  const MeanVector mu(std::vector<double>{1.0, 0.0});
  CHECK(max_statistic(x, mu, ShiftVector::zeros(2)) == doctest::Approx(0.0));

  // column sums after centering are 0, so only the shift survives:
  // max((0 + 4*0.5)/2, (0 - 4*0.5)/2) = 1
  const ShiftVector t(std::vector<double>{0.5, -0.5});
  CHECK(max_statistic(x, mu, t) == doctest::Approx(1.0));
}

TEST_CASE("max_statistic errors name the mismatched axis") {
  const SampleMatrix x = four_by_two();
  CHECK_THROWS_WITH_AS(
      max_statistic(x, MeanVector::zeros(3), ShiftVector::zeros(2)),
      "mu has length 3 but X has p = 2 columns", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      max_statistic(x, MeanVector::zeros(2), ShiftVector::zeros(1)),
      "t has length 1 but X has p = 2 columns", std::invalid_argument);
}

TEST_CASE("max_abs_statistic fixtures") {
  const SampleMatrix single = SampleMatrix::from_rows({{-3.0}});
  CHECK(max_abs_statistic(single, MeanVector::zeros(1), ShiftVector::zeros(1)) ==
        doctest::Approx(3.0));

  const SampleMatrix x = four_by_two();
  const MeanVector mu(std::vector<double>{1.0, 0.0});
  CHECK(max_abs_statistic(x, mu, ShiftVector::zeros(2)) == doctest::Approx(0.0));

  const SampleMatrix two = SampleMatrix::from_rows({{0.0}, {2.0}});
  CHECK(max_abs_statistic(two, MeanVector::constant(1, 1.0),
                          ShiftVector::zeros(1)) == doctest::Approx(0.0));
}

TEST_CASE("max_abs equals the stacked two-sided max") {
  Rng rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(6), p = 1 + rng.below(5);
    const SampleMatrix x = random_matrix(n, p, rng);
    std::vector<double> mu(p), t(p);
    for (std::size_t j = 0; j < p; ++j) {
      mu[j] = rng.normal();
      t[j] = rng.normal();
    }
    SampleMatrix neg(n, p);
    std::vector<double> neg_mu(p), neg_t(p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) neg(i, j) = -x(i, j);
    for (std::size_t j = 0; j < p; ++j) {
      neg_mu[j] = -mu[j];
      neg_t[j] = -t[j];
    }
    const double lhs = max_abs_statistic(x, MeanVector(mu), ShiftVector(t));
    const double rhs =
        std::max(max_statistic(x, MeanVector(mu), ShiftVector(t)),
                 max_statistic(neg, MeanVector(neg_mu), ShiftVector(neg_t)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("max_statistic invariant under row permutation") {
  Rng rng(17, 0);
  const SampleMatrix x = random_matrix(7, 3, rng);
  std::vector<double> mu = {0.1, -0.2, 0.3};
  std::vector<double> t = {0.0, 0.5, -0.1};
  const double base = max_statistic(x, MeanVector(mu), ShiftVector(t));

  std::vector<std::size_t> order = {6, 0, 4, 2, 5, 1, 3};
  std::vector<std::vector<double>> rows;
  for (std::size_t i : order)
    rows.emplace_back(x.row(i), x.row(i) + x.p());
  const SampleMatrix permuted = SampleMatrix::from_rows(rows);
  CHECK(max_statistic(permuted, MeanVector(mu), ShiftVector(t)) ==
        doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("empirical_quantile order statistics") {
  CHECK(empirical_quantile({1, 2, 3}, 0.5) == 2.0);
  // the empirical CDF at 2 equals 0.5 >= 0.5
  CHECK(empirical_quantile({1, 2, 3, 4}, 0.5) == 2.0);
  CHECK(empirical_quantile({5}, 0.9) == 5.0);
  // ceil(0.9 * 10) must be 9, not 10, despite 0.9*10 rounding up
  CHECK(empirical_quantile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.9) == 9.0);
  CHECK(empirical_quantile({3, 1, 2, 2}, 0.75) == 2.0);

  CHECK_THROWS_AS(empirical_quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(empirical_quantile({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_quantile({1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("empirical_quantile is an element and monotone in gamma") {
  Rng rng(23, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> samples(1 + rng.below(40));
    for (double& s : samples) s = rng.normal();
    double prev = -1e300;
    for (double gamma : {0.05, 0.2, 0.5, 0.51, 0.9, 0.99}) {
      const double q = empirical_quantile(samples, gamma);
      CHECK(std::count(samples.begin(), samples.end(), q) > 0);
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("covariance_estimate fixtures") {
  const SampleMatrix two = SampleMatrix::from_rows({{0.0}, {2.0}});
  const CovarianceEstimate c1 = covariance_estimate(two);
  CHECK(c1(0, 0) == doctest::Approx(1.0));

  const SampleMatrix constant = SampleMatrix::from_rows({{1.5, -2.0}, {1.5, -2.0}});
  const CovarianceEstimate c2 = covariance_estimate(constant);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) CHECK(c2(j, k) == 0.0);

  const SampleMatrix diag = SampleMatrix::from_rows({{0.0, 0.0}, {2.0, 2.0}});
  const CovarianceEstimate c3 = covariance_estimate(diag);
  CHECK(c3(0, 0) == doctest::Approx(1.0));
  CHECK(c3(0, 1) == doctest::Approx(1.0));
  CHECK(c3(1, 0) == doctest::Approx(1.0));
  CHECK(c3(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("covariance_estimate diagonal and Cauchy-Schwarz") {
  Rng rng(31, 0);
  const std::size_t n = 50, p = 4;
  const SampleMatrix x = random_matrix(n, p, rng);
  const CovarianceEstimate cov = covariance_estimate(x);
  CHECK(cov.symmetry_defect() <= 1e-12);
  const std::vector<double> mean = column_means(x);
  for (std::size_t j = 0; j < p; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x(i, j) - mean[j];
      ss += d * d;
    }
    CHECK(cov(j, j) == doctest::Approx(ss / n).epsilon(1e-12));
    CHECK(cov(j, j) >= 0.0);
  }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < p; ++k)
      CHECK(std::fabs(cov(j, k)) <=
            std::sqrt(cov(j, j) * cov(k, k)) + 1e-12);
}

TEST_CASE("SampleMatrix validation") {
  CHECK_THROWS_AS(SampleMatrix(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(SampleMatrix(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(SampleMatrix(1, 2, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SampleMatrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(SampleMatrix::from_rows({{1.0, 2.0}, {3.0}}),
                  std::invalid_argument);
}
