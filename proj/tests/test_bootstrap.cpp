#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "maxboot/bootstrap.hpp"

using namespace maxboot;

namespace {

const double kSqrt2 = std::sqrt(2.0);

SampleMatrix two_rows() { return SampleMatrix::from_rows({{0.0}, {2.0}}); }

SampleMatrix identical_rows(std::size_t n) {
  std::vector<std::vector<double>> rows(n, {1.5, -0.3});
  return SampleMatrix::from_rows(rows);
}

// frequency of MC draws near each enumerated atom
std::map<std::size_t, std::size_t> match_draws_to_atoms(
    const std::vector<std::pair<double, double>>& atoms,
    const std::vector<double>& draws) {
  std::map<std::size_t, std::size_t> hits;
  for (double d : draws) {
    bool matched = false;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (std::fabs(d - atoms[a].first) <= 1e-9) {
        ++hits[a];
        matched = true;
        break;
      }
    }
    REQUIRE(matched);
  }
  return hits;
}

void check_frequencies_against_atoms(const std::vector<double>& exact_draws,
                                     const std::vector<double>& mc_draws) {
  const auto atoms = atoms_from_draws(exact_draws);
  const auto hits = match_draws_to_atoms(atoms, mc_draws);
  const double reps = static_cast<double>(mc_draws.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const double q = atoms[a].second;
    const double freq =
        hits.count(a) ? static_cast<double>(hits.at(a)) / reps : 0.0;
    const double se = std::sqrt(q * (1.0 - q) / reps);
    CHECK(std::fabs(freq - q) <= std::max(3.0 * se, 1e-4));
  }
}

}  // namespace

TEST_CASE("degenerate resampling gives zero and shift-only draws") {
  const SampleMatrix x = identical_rows(4);
  Rng rng(201, 0);
  for (int i = 0; i < 10; ++i)
    CHECK(empirical_bootstrap_stat(x, ShiftVector::zeros(2), rng) == 0.0);

  // only the shift survives: max_j sqrt(n) * tau
  const ShiftVector tau = ShiftVector::constant(2, 0.3);
  for (int i = 0; i < 10; ++i)
    CHECK(empirical_bootstrap_stat(x, tau, rng) == doctest::Approx(0.6));

  for (int i = 0; i < 10; ++i) {
    CHECK(multiplier_bootstrap_stat(x, ShiftVector::zeros(2),
                                    WeightFamily::rademacher_weights(),
                                    rng) == 0.0);
    CHECK(multiplier_bootstrap_stat(x, ShiftVector::zeros(2),
                                    WeightFamily::gaussian_weights(), rng) ==
          0.0);
  }
}

TEST_CASE("empirical bootstrap law on the {0,2} fixture") {
  const SampleMatrix x = two_rows();
  const ShiftVector t = ShiftVector::zeros(1);
  const auto exact =
      exact_conditional_draws(x, t, BootstrapScheme::empirical(1));
  // all 4 resamples: {-sqrt2 w.p. 1/4, 0 w.p. 1/2, +sqrt2 w.p. 1/4}
  const auto atoms = atoms_from_draws(exact);
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[0].first == doctest::Approx(-kSqrt2));
  CHECK(atoms[0].second == doctest::Approx(0.25));
  CHECK(atoms[1].first == doctest::Approx(0.0));
  CHECK(atoms[1].second == doctest::Approx(0.5));
  CHECK(atoms[2].first == doctest::Approx(kSqrt2));
  CHECK(atoms[2].second == doctest::Approx(0.25));

  std::vector<double> draws(100000);
  Rng rng(202, 0);
  for (double& d : draws) d = empirical_bootstrap_stat(x, t, rng);
  check_frequencies_against_atoms(exact, draws);
}

TEST_CASE("rademacher multiplier law on the {0,2} fixture") {
  const SampleMatrix x = two_rows();
  const ShiftVector t = ShiftVector::zeros(1);
  const auto exact = exact_conditional_draws(
      x, t, BootstrapScheme::multiplier(WeightFamily::rademacher_weights(), 1));
  const auto atoms = atoms_from_draws(exact);
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[1].second == doctest::Approx(0.5));

  std::vector<double> draws(100000);
  Rng rng(203, 0);
  for (double& d : draws)
    d = multiplier_bootstrap_stat(x, t, WeightFamily::rademacher_weights(), rng);
  check_frequencies_against_atoms(exact, draws);
}

TEST_CASE("gaussian multiplier conditional variance on the {0,2} fixture") {
  // centered rows are +-1, so n^{-1/2} sum e_i x_i ~ N(0, 1)
  const SampleMatrix x = two_rows();
  const ShiftVector t = ShiftVector::zeros(1);
  Rng rng(204, 0);
  double sum = 0.0, sum2 = 0.0;
  const std::size_t reps = 100000;
  for (std::size_t i = 0; i < reps; ++i) {
    const double d =
        multiplier_bootstrap_stat(x, t, WeightFamily::gaussian_weights(), rng);
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / reps;
  CHECK(std::fabs(sum2 / reps - mean * mean - 1.0) <= 0.02);
}

TEST_CASE("conditional-law equivalence on an n=3, p=2 fixture") {
  const SampleMatrix x =
      SampleMatrix::from_rows({{0.3, -1.2}, {1.7, 0.4}, {-0.5, 0.9}});
  const ShiftVector t(std::vector<double>{0.1, -0.2});

  SUBCASE("empirical vs n^n enumeration") {
    const auto exact =
        exact_conditional_draws(x, t, BootstrapScheme::empirical(1));
    CHECK(exact.size() == 27);
    std::vector<double> draws(100000);
    Rng rng(205, 0);
    for (double& d : draws) d = empirical_bootstrap_stat(x, t, rng);
    check_frequencies_against_atoms(exact, draws);
  }
  SUBCASE("rademacher vs 2^n enumeration") {
    const auto exact = exact_conditional_draws(
        x, t,
        BootstrapScheme::multiplier(WeightFamily::rademacher_weights(), 1));
    CHECK(exact.size() == 8);
    std::vector<double> draws(100000);
    Rng rng(206, 0);
    for (double& d : draws)
      d = multiplier_bootstrap_stat(x, t, WeightFamily::rademacher_weights(),
                                    rng);
    check_frequencies_against_atoms(exact, draws);
  }
}

TEST_CASE("critical_value in exact mode matches the hand enumeration") {
  const SampleMatrix x = two_rows();
  const ShiftVector t = ShiftVector::zeros(1);
  // conditional CDF at 0 is 0.75 < 0.9, so c_{0.9} = sqrt(2)
  const CriticalValueResult cv =
      exact_critical_value(x, t, 0.1, BootstrapScheme::empirical(1));
  CHECK(cv.critical_value == doctest::Approx(kSqrt2));
  CHECK(cv.exact);

  const CriticalValueResult rademacher = exact_critical_value(
      x, t, 0.1,
      BootstrapScheme::multiplier(WeightFamily::rademacher_weights(), 1));
  CHECK(rademacher.critical_value == doctest::Approx(kSqrt2));

  // absolute-value variant folds the two tails: {0: 1/2, sqrt2: 1/2}
  const CriticalValueResult abs_cv =
      exact_critical_value(x, t, 0.1, BootstrapScheme::empirical(1, true));
  CHECK(abs_cv.critical_value == doctest::Approx(kSqrt2));
}

TEST_CASE("critical_value degenerate and B=1 cases") {
  const SampleMatrix x = identical_rows(3);
  const ShiftVector t = ShiftVector::zeros(2);
  for (double alpha : {0.05, 0.1, 0.5}) {
    CHECK(critical_value(x, t, alpha, BootstrapScheme::empirical(64), {7, 0})
              .critical_value == 0.0);
    CHECK(critical_value(
              x, t, alpha,
              BootstrapScheme::multiplier(WeightFamily::third_order_weights(0.2), 64),
              {7, 0})
              .critical_value == 0.0);
  }

  // B=1: the critical value is the single draw, which consumes the
  // stream seed.stream ^ (0 << 33) = the seed stream itself
  const SampleMatrix y = SampleMatrix::from_rows({{0.4}, {1.9}, {-2.2}});
  const RngStream seed{99, 5};
  const CriticalValueResult one =
      critical_value(y, ShiftVector::zeros(1), 0.1,
                     BootstrapScheme::empirical(1), seed);
  Rng rng(seed);
  CHECK(one.critical_value == empirical_bootstrap_stat(y, ShiftVector::zeros(1), rng));
}

TEST_CASE("gaussian_critical_value delegates draw-for-draw") {
  const SampleMatrix x =
      SampleMatrix::from_rows({{0.3, -1.2}, {1.7, 0.4}, {-0.5, 0.9}});
  const ShiftVector t = ShiftVector::zeros(2);
  CriticalValueOptions options;
  options.retain_draws = true;
  const RngStream seed{314, 0};
  const CriticalValueResult a = gaussian_critical_value(x, t, 0.1, 257, seed, options);
  const CriticalValueResult b = critical_value(
      x, t, 0.1, BootstrapScheme::multiplier(WeightFamily::gaussian_weights(), 257),
      seed, options);
  REQUIRE(a.draws_retained.size() == b.draws_retained.size());
  for (std::size_t i = 0; i < a.draws_retained.size(); ++i)
    CHECK(a.draws_retained[i] == b.draws_retained[i]);
  CHECK(a.critical_value == b.critical_value);
}

TEST_CASE("gaussian critical value approaches the normal quantile") {
  // conditional std dev is 1 on the {0,2} fixture
  const SampleMatrix x = two_rows();
  const CriticalValueResult cv =
      gaussian_critical_value(x, ShiftVector::zeros(1), 0.1, 100000, {205, 0});
  CHECK(std::fabs(cv.critical_value - 1.2815515655446004) <= 0.03);
}

TEST_CASE("decide boundary behaviour") {
  CriticalValueResult cv;
  cv.critical_value = 1.0;
  CHECK_FALSE(decide(1.0, cv, 0.0).reject);  // strict inequality
  CHECK(decide(1.5, cv, 0.4).reject);
  CHECK_FALSE(decide(1.5, cv, 0.6).reject);
  CHECK_THROWS_AS(decide(1.0, cv, -0.1), std::invalid_argument);
}

TEST_CASE("shift equivariance in p=1") {
  const SampleMatrix x = SampleMatrix::from_rows({{0.7}, {-1.3}, {2.4}, {0.1}});
  const RngStream seed{55, 3};
  const BootstrapScheme scheme =
      BootstrapScheme::multiplier(WeightFamily::gaussian_weights(), 301);
  const double tau = 0.37;
  const CriticalValueResult base =
      critical_value(x, ShiftVector::zeros(1), 0.1, scheme, seed);
  const CriticalValueResult shifted =
      critical_value(x, ShiftVector::constant(1, tau), 0.1, scheme, seed);
  CHECK(shifted.critical_value == base.critical_value + std::sqrt(4.0) * tau);
}

TEST_CASE("monotone in alpha for a fixed draw multiset") {
  const SampleMatrix x = SampleMatrix::from_rows({{0.7}, {-1.3}, {2.4}, {0.1}});
  const RngStream seed{56, 0};
  const BootstrapScheme scheme = BootstrapScheme::empirical(199);
  double prev = std::numeric_limits<double>::infinity();
  for (double alpha : {0.05, 0.1, 0.25, 0.5}) {
    const double c =
        critical_value(x, ShiftVector::zeros(1), alpha, scheme, seed).critical_value;
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("scale equivariance") {
  const SampleMatrix x =
      SampleMatrix::from_rows({{0.3, -1.2}, {1.7, 0.4}, {-0.5, 0.9}});
  const ShiftVector t(std::vector<double>{0.1, -0.2});
  const RngStream seed{57, 0};
  const BootstrapScheme scheme =
      BootstrapScheme::multiplier(WeightFamily::rademacher_weights(), 173);
  const double base = critical_value(x, t, 0.1, scheme, seed).critical_value;

  for (double c : {2.0, 3.0}) {
    SampleMatrix xs(x.n(), x.p());
    std::vector<double> ts(x.p());
    for (std::size_t i = 0; i < x.n(); ++i)
      for (std::size_t j = 0; j < x.p(); ++j) xs(i, j) = c * x(i, j);
    for (std::size_t j = 0; j < x.p(); ++j) ts[j] = c * t[j];
    const double scaled =
        critical_value(xs, ShiftVector(ts), 0.1, scheme, seed).critical_value;
    if (c == 2.0)
      CHECK(scaled == c * base);  // power-of-two scaling is exact
    else
      CHECK(scaled == doctest::Approx(c * base).epsilon(1e-12));
  }
}

TEST_CASE("determinism across calls and thread counts") {
  const SampleMatrix x =
      SampleMatrix::from_rows({{0.3, -1.2}, {1.7, 0.4}, {-0.5, 0.9}});
  const ShiftVector t = ShiftVector::zeros(2);
  const RngStream seed{58, 0};
  const BootstrapScheme scheme =
      BootstrapScheme::multiplier(WeightFamily::third_order_weights(0.2), 400);
  CriticalValueOptions serial;
  serial.retain_draws = true;
  CriticalValueOptions parallel = serial;
  parallel.threads = 3;
  const CriticalValueResult a = critical_value(x, t, 0.1, scheme, seed, serial);
  const CriticalValueResult b = critical_value(x, t, 0.1, scheme, seed, parallel);
  CHECK(a.critical_value == b.critical_value);
  REQUIRE(a.draws_retained.size() == b.draws_retained.size());
  for (std::size_t i = 0; i < a.draws_retained.size(); ++i)
    CHECK(a.draws_retained[i] == b.draws_retained[i]);
}

TEST_CASE("uncentered multiplier statistic") {
  const SampleMatrix x = SampleMatrix::from_rows({{1.0}, {3.0}});
  BootstrapScheme scheme =
      BootstrapScheme::multiplier(WeightFamily::rademacher_weights(), 1);
  scheme.centered = false;
  const auto draws = exact_conditional_draws(x, ShiftVector::zeros(1), scheme);
  // (+-1 +- 3)/sqrt(2): four equally likely sign patterns
  const auto atoms = atoms_from_draws(draws);
  REQUIRE(atoms.size() == 4);
  CHECK(atoms[0].first == doctest::Approx(-4.0 / kSqrt2));
  CHECK(atoms[3].first == doctest::Approx(4.0 / kSqrt2));

  BootstrapScheme bad = BootstrapScheme::empirical(10);
  bad.centered = false;
  CHECK_THROWS_AS(critical_value(x, ShiftVector::zeros(1), 0.1, bad, {1, 0}),
                  std::invalid_argument);
}

TEST_CASE("exact enumeration guards") {
  const SampleMatrix big(13, 1);
  CHECK_FALSE(exact_enumeration_supported(
      BootstrapScheme::multiplier(WeightFamily::rademacher_weights(), 1), 13));
  CHECK_FALSE(exact_enumeration_supported(BootstrapScheme::empirical(1), 9));
  CHECK_FALSE(exact_enumeration_supported(
      BootstrapScheme::multiplier(WeightFamily::gaussian_weights(), 1), 2));
  CHECK_THROWS_AS(exact_conditional_draws(
                      big, ShiftVector::zeros(1),
                      BootstrapScheme::multiplier(
                          WeightFamily::rademacher_weights(), 1)),
                  std::invalid_argument);
}

TEST_CASE("critical_value validates its inputs") {
  const SampleMatrix x = two_rows();
  CHECK_THROWS_AS(
      critical_value(x, ShiftVector::zeros(1), 0.0, BootstrapScheme::empirical(8),
                     {1, 0}),
      std::invalid_argument);
  BootstrapScheme zero = BootstrapScheme::empirical(0);
  CHECK_THROWS_AS(critical_value(x, ShiftVector::zeros(1), 0.1, zero, {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      critical_value(x, ShiftVector::zeros(2), 0.1, BootstrapScheme::empirical(8),
                     {1, 0}),
      std::invalid_argument);
}
