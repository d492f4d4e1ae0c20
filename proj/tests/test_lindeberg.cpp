#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "maxboot/lindeberg.hpp"

using namespace maxboot;

namespace {

std::uint64_t factorial(std::size_t m) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("lindeberg_draw satisfies its selector identity") {
  Rng rng(301, 0);
  const std::vector<std::vector<double>> x = {{1.0, 2.0}, {3.0, -1.0}, {0.5, 0.0}};
  const std::vector<std::vector<double>> y = {{-2.0, 1.0}, {0.0, 4.0}, {1.5, 2.5}};
  for (std::size_t k = 1; k <= 3; ++k) {
    for (int rep = 0; rep < 50; ++rep) {
      const InterpolationDraw draw = lindeberg_draw(x, y, k, rng);
      REQUIRE(draw.epsilon.size() == 3);
      double w0 = 0.0, w1 = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& row = draw.epsilon[i] ? x[i] : y[i];
        w0 += row[0];
        w1 += row[1];
      }
      CHECK(draw.w[0] == w0);
      CHECK(draw.w[1] == w1);
    }
  }
}

TEST_CASE("lindeberg_draw n=1 picks X with probability 1/2") {
  Rng rng(302, 0);
  const std::vector<std::vector<double>> x = {{2.0}};
  const std::vector<std::vector<double>> y = {{5.0}};
  std::size_t picked_x = 0;
  const std::size_t reps = 100000;
  for (std::size_t r = 0; r < reps; ++r)
    if (lindeberg_draw(x, y, 1, rng).epsilon[0]) ++picked_x;
  CHECK(std::fabs(static_cast<double>(picked_x) / reps - 0.5) <= 0.01);
}

TEST_CASE("lindeberg_draw n=2 subset probabilities") {
  // P(eps=(0,0)) = P(eps=(1,1)) = 1/3, each singleton 1/6
  Rng rng(303, 0);
  const std::vector<std::vector<double>> x = {{1.0}, {2.0}};
  const std::vector<std::vector<double>> y = {{-1.0}, {-2.0}};
  std::map<int, std::size_t> counts;
  const std::size_t reps = 100000;
  for (std::size_t r = 0; r < reps; ++r) {
    const InterpolationDraw draw = lindeberg_draw(x, y, 1, rng);
    ++counts[draw.epsilon[0] + 2 * draw.epsilon[1]];
  }
  const double inv = 1.0 / static_cast<double>(reps);
  CHECK(std::fabs(counts[0] * inv - 1.0 / 3.0) <= 0.01);
  CHECK(std::fabs(counts[1] * inv - 1.0 / 6.0) <= 0.01);
  CHECK(std::fabs(counts[2] * inv - 1.0 / 6.0) <= 0.01);
  CHECK(std::fabs(counts[3] * inv - 1.0 / 3.0) <= 0.01);
}

TEST_CASE("lindeberg_draw with identical endpoints is deterministic") {
  Rng rng(304, 0);
  const std::vector<std::vector<double>> x = {{1.0, -2.0}, {0.5, 3.0}};
  for (int rep = 0; rep < 20; ++rep) {
    const InterpolationDraw draw = lindeberg_draw(x, x, 2, rng);
    CHECK(draw.w[0] == doctest::Approx(1.5));
    CHECK(draw.w[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("lindeberg_draw input validation") {
  Rng rng(305, 0);
  const std::vector<std::vector<double>> x = {{1.0}, {2.0}};
  const std::vector<std::vector<double>> y = {{1.0}};
  CHECK_THROWS_AS(lindeberg_draw(x, y, 1, rng), std::invalid_argument);
  const std::vector<std::vector<double>> y2 = {{1.0}, {2.0}};
  CHECK_THROWS_AS(lindeberg_draw(x, y2, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(lindeberg_draw(x, y2, 3, rng), std::invalid_argument);
}

TEST_CASE("epsilon law by Monte Carlo") {
  SUBCASE("n=1 halves") {
    Rng rng(306, 0);
    const EpsilonLawResult law = lindeberg_epsilon_law(1, 100000, rng);
    CHECK(std::fabs(law.counts[0] / 100000.0 - 0.5) <= 0.01);
    CHECK(std::fabs(law.counts[1] / 100000.0 - 0.5) <= 0.01);
  }
  SUBCASE("n=4 five atoms of 0.2") {
    Rng rng(307, 0);
    const EpsilonLawResult law = lindeberg_epsilon_law(4, 100000, rng);
    CHECK(law.exact_atom == doctest::Approx(0.2));
    for (std::size_t s = 0; s <= 4; ++s)
      CHECK(std::fabs(law.counts[s] / 100000.0 - 0.2) <= 0.01);
  }
  SUBCASE("n=2 exchangeability of the two singletons") {
    Rng rng(308, 0);
    std::size_t c10 = 0, c01 = 0;
    for (int r = 0; r < 100000; ++r) {
      const auto eps = lindeberg_epsilon_draw(2, rng);
      if (eps[0] == 1 && eps[1] == 0) ++c10;
      if (eps[0] == 0 && eps[1] == 1) ++c01;
    }
    CHECK(std::fabs((c10 - c01) / 100000.0) <= 0.01);
    CHECK(std::fabs(c10 / 100000.0 - 1.0 / 6.0) <= 0.01);
  }
}

TEST_CASE("exact subset law: counts are s!(n-s)! for every pattern") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const SubsetLaw law = lindeberg_exact_subset_law(n, k);
      CHECK(law.total_cells == factorial(n) * (n + 1));
      std::vector<std::uint64_t> per_s(n + 1, 0);
      for (std::size_t mask = 0; mask < law.pattern_cells.size(); ++mask) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < n; ++i) s += (mask >> i) & 1u;
        CHECK(law.pattern_cells[mask] == factorial(s) * factorial(n - s));
        per_s[s] += law.pattern_cells[mask];
      }
      // marginal law of sum(eps) is exactly uniform on 0..n
      for (std::size_t s = 0; s <= n; ++s) CHECK(per_s[s] == factorial(n));
    }
  }
}

TEST_CASE("exact W_k law is identical across k") {
  const std::vector<double> x = {1.0, 2.5, -0.7};
  const std::vector<double> y = {0.2, -1.1, 0.9};
  const auto law1 = lindeberg_exact_wk_law(x, y, 1);
  for (std::size_t k = 2; k <= 3; ++k) {
    const auto lawk = lindeberg_exact_wk_law(x, y, k);
    REQUIRE(lawk.size() == law1.size());
    for (std::size_t i = 0; i < law1.size(); ++i) {
      CHECK(std::fabs(lawk[i].first - law1[i].first) <= 1e-12);
      CHECK(std::fabs(lawk[i].second - law1[i].second) <= 1e-12);
    }
  }
  // two-point version as well
  const auto small1 = lindeberg_exact_wk_law({3.0, -1.0}, {0.5, 2.0}, 1);
  const auto small2 = lindeberg_exact_wk_law({3.0, -1.0}, {0.5, 2.0}, 2);
  REQUIRE(small1.size() == small2.size());
  for (std::size_t i = 0; i < small1.size(); ++i) {
    CHECK(std::fabs(small1[i].first - small2[i].first) <= 1e-12);
    CHECK(std::fabs(small1[i].second - small2[i].second) <= 1e-12);
  }
}

TEST_CASE("exchangeable tail check degenerate cases") {
  Rng rng(309, 0);
  // a = ones: |sum a_i X_i| <= n = |sum a_i|
  std::vector<double> ones(20, 1.0), pool(20);
  for (std::size_t i = 0; i < 20; ++i) pool[i] = (i < 10) ? 1.0 : -1.0;
  const TailCheckReport r1 = exchangeable_tail_check(ones, pool, 0.5, 20000, rng);
  CHECK(r1.empirical_tail == 0.0);

  // zero weights: tail 0, bound 0 by convention
  std::vector<double> zeros(10, 0.0), pool10(10, 0.5);
  const TailCheckReport r2 = exchangeable_tail_check(zeros, pool10, 1.0, 1000, rng);
  CHECK(r2.empirical_tail == 0.0);
  CHECK(r2.bound == 0.0);
}

TEST_CASE("exchangeable tail check against the exponential bound") {
  Rng rng(310, 0);
  std::vector<double> a(20), pool(20);
  for (std::size_t i = 0; i < 20; ++i) a[i] = (i % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < 20; ++i) pool[i] = (i < 10) ? 1.0 : -1.0;
  const std::size_t reps = 1000000;
  const TailCheckReport report = exchangeable_tail_check(a, pool, 4.0, reps, rng);
  CHECK(report.bound == doctest::Approx(2.0 * std::exp(-16.0 / (32.0 * 20.0))));
  const double se =
      std::sqrt(report.bound * std::max(1.0 - report.bound, 0.0) / reps);
  CHECK(report.empirical_tail <= report.bound + 3.0 * se);
}

TEST_CASE("exchangeable tail check validation") {
  Rng rng(311, 0);
  std::vector<double> a = {1.0, 2.0};
  CHECK_THROWS_AS(exchangeable_tail_check(a, {0.5, 1.5}, 1.0, 10, rng),
                  std::invalid_argument);  // pool entry > 1
  CHECK_THROWS_AS(exchangeable_tail_check(a, {0.5}, 1.0, 10, rng),
                  std::invalid_argument);  // length mismatch
  CHECK_THROWS_AS(exchangeable_tail_check(a, {0.5, 0.5}, 0.0, 10, rng),
                  std::invalid_argument);  // t must be positive
}
