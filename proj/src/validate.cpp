#include "maxboot/validate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxboot/distributions.hpp"
#include "maxboot/format.hpp"
#include "maxboot/lindeberg.hpp"
#include "maxboot/special.hpp"
#include "maxboot/statistics.hpp"

namespace maxboot {

namespace {

std::uint64_t factorial(std::size_t m) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

void push(std::vector<CheckResult>& out, std::string check, std::string target,
          double observed, double expected, double tolerance) {
  CheckResult r;
  r.check = std::move(check);
  r.target = std::move(target);
  r.observed = observed;
  r.expected = expected;
  r.tolerance = tolerance;
  r.pass = std::fabs(observed - expected) <= tolerance;
  out.push_back(std::move(r));
}

void push_upper(std::vector<CheckResult>& out, std::string check,
                std::string target, double observed, double limit) {
  CheckResult r;
  r.check = std::move(check);
  r.target = std::move(target);
  r.observed = observed;
  r.expected = limit;
  r.tolerance = 0.0;
  r.pass = observed <= limit;
  out.push_back(std::move(r));
}

void check_epsilon_law(const ValidateOptions& opt, std::vector<CheckResult>& out) {
  Rng rng(opt.seed.with_stream(opt.seed.stream ^ 0x10));
  const EpsilonLawResult law = lindeberg_epsilon_law(opt.n, opt.reps, rng);
  const double q = law.exact_atom;
  const double tol =
      std::max(0.005, 5.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(opt.reps)));
  for (std::size_t s = 0; s <= opt.n; ++s) {
    const double freq =
        static_cast<double>(law.counts[s]) / static_cast<double>(opt.reps);
    push(out, "epsilon-law[n=" + std::to_string(opt.n) + ",s=" + std::to_string(s) + "]",
         "P(sum eps = s) = 1/(n+1)", freq, q, tol);
  }
}

void check_subset_law(const ValidateOptions& opt, std::vector<CheckResult>& out) {
  const std::size_t n = std::min<std::size_t>(std::max<std::size_t>(opt.n, 1), 6);
  for (std::size_t k = 1; k <= n; ++k) {
    const SubsetLaw law = lindeberg_exact_subset_law(n, k);
    std::uint64_t bad_patterns = 0;
    std::vector<std::uint64_t> per_s(n + 1, 0);
    for (std::size_t mask = 0; mask < law.pattern_cells.size(); ++mask) {
      std::size_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += (mask >> i) & 1u;
      per_s[s] += law.pattern_cells[mask];
      if (law.pattern_cells[mask] != factorial(s) * factorial(n - s))
        ++bad_patterns;
    }
    push(out, "subset-law[n=" + std::to_string(n) + ",k=" + std::to_string(k) + "]",
         "every pattern has s!(n-s)! cells", static_cast<double>(bad_patterns),
         0.0, 0.0);
    // marginal: each s gets exactly n! of the n!*(n+1) cells
    std::uint64_t bad_s = 0;
    for (std::size_t s = 0; s <= n; ++s)
      if (per_s[s] != factorial(n)) ++bad_s;
    push(out, "epsilon-sum-exact[n=" + std::to_string(n) + ",k=" + std::to_string(k) + "]",
         "P(sum eps = s) = 1/(n+1) exactly", static_cast<double>(bad_s), 0.0, 0.0);
  }
}

void check_wk_invariance(std::vector<CheckResult>& out) {
  const std::vector<double> x = {1.0, 2.5, -0.7};
  const std::vector<double> y = {0.2, -1.1, 0.9};
  const auto law1 = lindeberg_exact_wk_law(x, y, 1);
  for (std::size_t k = 2; k <= 3; ++k) {
    const auto lawk = lindeberg_exact_wk_law(x, y, k);
    double worst = (law1.size() == lawk.size()) ? 0.0 : 1.0;
    if (law1.size() == lawk.size()) {
      for (std::size_t i = 0; i < law1.size(); ++i) {
        worst = std::max(worst, std::fabs(law1[i].first - lawk[i].first));
        worst = std::max(worst, std::fabs(law1[i].second - lawk[i].second));
      }
    }
    push(out, "wk-invariance[k=" + std::to_string(k) + " vs k=1]",
         "law of W_k identical across k", worst, 0.0, 1e-12);
  }
}

void check_tail_bound(const ValidateOptions& opt, std::vector<CheckResult>& out) {
  const std::size_t sizes[] = {10, 20, 50};
  const double t_factors[] = {0.5, 1.0, 2.0, 4.0};
  std::uint64_t cell = 0;
  for (std::size_t n : sizes) {
    // three weight/pool shapes
    for (int shape = 0; shape < 3; ++shape) {
      std::vector<double> a(n), pool(n);
      std::string shape_name;
      if (shape == 0) {
        shape_name = "alternating";
        for (std::size_t i = 0; i < n; ++i) a[i] = (i % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) pool[i] = (i < n / 2) ? 1.0 : -1.0;
      } else if (shape == 1) {
        shape_name = "ramp";
        for (std::size_t i = 0; i < n; ++i)
          a[i] = static_cast<double>(i + 1) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
          pool[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
      } else {
        shape_name = "ones";
        for (std::size_t i = 0; i < n; ++i) a[i] = 1.0;
        for (std::size_t i = 0; i < n; ++i) pool[i] = (i < n / 2) ? 1.0 : -1.0;
      }
      double sum_a2 = 0.0;
      for (double ai : a) sum_a2 += ai * ai;
      for (double f : t_factors) {
        const double t = f * std::sqrt(sum_a2);
        Rng rng(opt.seed.with_stream(opt.seed.stream ^ (0x2000 + cell)));
        ++cell;
        const TailCheckReport report =
            exchangeable_tail_check(a, pool, t, opt.tail_reps, rng);
        const double se = std::sqrt(std::max(report.bound * (1.0 - report.bound),
                                             0.0) /
                                    static_cast<double>(report.reps));
        push_upper(out,
                   "tail-bound[n=" + std::to_string(n) + "," + shape_name +
                       ",t=" + format_real(f) + "*s]",
                   "empirical tail <= 2exp(-t^2/(32*sum a^2)) + 3se",
                   report.empirical_tail, report.bound + 3.0 * se);
      }
    }
  }
}

WeightFamily family_from_options(const ValidateOptions& opt) {
  if (opt.family == "gaussian") return WeightFamily::gaussian_weights();
  if (opt.family == "rademacher") return WeightFamily::rademacher_weights();
  if (opt.family == "mammen3" || opt.family == "third_order")
    return WeightFamily::third_order_weights(opt.gamma);
  if (opt.family == "beta")
    return WeightFamily::beta_weights(opt.beta_alpha, opt.beta_beta, opt.beta_v);
  throw std::invalid_argument(
      "unknown weight family '" + opt.family +
      "' (valid: gaussian, rademacher, mammen3, beta)");
}

// Exact E[exp(e^2/4)] for a N(0,s2) + point-mass-at-c component.
double psi2_gaussian_shift(double c, double s2) {
  const double d = 1.0 - 0.5 * s2;
  return std::exp(0.25 * c * c / d) / std::sqrt(d);
}

void check_weight_moments(const ValidateOptions& opt,
                          std::vector<CheckResult>& out) {
  const WeightFamily family = family_from_options(opt);
  const WeightSampler sampler(family);
  Rng rng(opt.seed.with_stream(opt.seed.stream ^ 0x30));
  const std::size_t draws = opt.moment_draws;
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0, psi2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double e = sampler(rng);
    const double e2 = e * e;
    m1 += e;
    m2 += e2;
    m3 += e2 * e;
    m4 += e2 * e2;
    psi2 += std::exp(0.25 * e2);
  }
  const double inv = 1.0 / static_cast<double>(draws);
  m1 *= inv;
  m2 *= inv;
  m3 *= inv;
  m4 *= inv;
  psi2 *= inv;

  double third_target = 0.0;
  if (family.kind == WeightFamily::Kind::third_order) {
    third_target = 1.0;
  } else if (family.kind == WeightFamily::Kind::beta) {
    // skewness of the scaled beta part times (1-v)^{3/2}
    const double al = family.alpha, be = family.beta;
    const double skew = 2.0 * (be - al) * std::sqrt(al + be + 1.0) /
                        ((al + be + 2.0) * std::sqrt(al * be));
    third_target = std::pow(1.0 - family.v, 1.5) * skew;
  }

  const std::string tag = "weight-moments[" + opt.family + "]";
  push(out, tag + " mean", "E[e] = 0", m1, 0.0, 0.01);
  push(out, tag + " second", "E[e^2] = 1", m2, 1.0, 0.01);
  push(out, tag + " third", "E[e^3]", m3, third_target, 0.05);
  push_upper(out, tag + " fourth", "E[e^4] finite (reported, limit 60)", m4, 60.0);
  if (family.kind == WeightFamily::Kind::beta) {
    push_upper(out, tag + " psi2", "E[exp(e^2/4)] (reported, limit 60)", psi2, 60.0);
  } else {
    double psi2_target;
    if (family.kind == WeightFamily::Kind::rademacher)
      psi2_target = std::exp(0.25);
    else if (family.kind == WeightFamily::Kind::gaussian)
      psi2_target = std::sqrt(2.0);
    else {
      const ThirdOrderParams params = third_order_params(family.gamma);
      const double s2 = params.sigma * params.sigma;
      psi2_target = params.gamma * psi2_gaussian_shift(params.a, s2) +
                    (1.0 - params.gamma) * psi2_gaussian_shift(params.b, s2);
    }
    push(out, tag + " psi2", "E[exp(e^2/4)] exact", psi2, psi2_target, 0.02);
    push_upper(out, tag + " psi2<=2", "sub-Gaussian condition E[exp(e^2/4)] <= 2",
               psi2, 2.0);
  }
}

void check_third_order_params(std::vector<CheckResult>& out) {
  const double grid[] = {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.27};
  for (double g : grid) {
    const ThirdOrderParams p = third_order_params(g);
    const double s2 = p.sigma * p.sigma;
    const double m1 = g * p.a + (1.0 - g) * p.b;
    const double m2 = g * p.a * p.a + (1.0 - g) * p.b * p.b + s2;
    const double m3 = g * p.a * p.a * p.a + (1.0 - g) * p.b * p.b * p.b;
    const std::string tag = "third-order-params[gamma=" + format_real(g) + "]";
    push(out, tag + " m1", "gamma*a + (1-gamma)*b = 0", m1, 0.0, 1e-12);
    push(out, tag + " m2", "two-point second moment + sigma^2 = 1", m2, 1.0, 1e-12);
    push(out, tag + " m3", "gamma*a^3 + (1-gamma)*b^3 = 1", m3, 1.0, 1e-12);
  }
}

void check_gamma_roundtrip(std::vector<CheckResult>& out) {
  const double shapes[] = {1.0, 3.0, 5.0};
  for (double k : shapes) {
    double worst = 0.0;
    double prev = -1.0;
    bool monotone = true;
    for (int i = 1; i <= 1000; ++i) {
      const double u = static_cast<double>(i) / 1001.0;
      const double x = gamma_quantile(u, k);
      worst = std::max(worst, std::fabs(regularized_gamma_p(k, x) - u));
      if (x <= prev) monotone = false;
      prev = x;
    }
    push(out, "gamma-roundtrip[k=" + format_real(k) + "]",
         "|P(k, F^-1(u)) - u| on a 1000-point grid", worst, 0.0, 1e-8);
    push(out, "gamma-monotone[k=" + format_real(k) + "]",
         "F^-1 strictly increasing on the grid", monotone ? 0.0 : 1.0, 0.0, 0.0);
  }
}

void check_normal_cdf(std::vector<CheckResult>& out) {
  double worst_sym = 0.0;
  for (int i = 0; i <= 160; ++i) {
    const double x = -8.0 + 0.1 * i;
    worst_sym = std::max(worst_sym,
                         std::fabs(std_normal_cdf(-x) - (1.0 - std_normal_cdf(x))));
  }
  push(out, "normal-cdf symmetry", "Phi(-x) = 1 - Phi(x) on [-8,8]", worst_sym,
       0.0, 1e-14);
  // a few reference values
  const struct {
    double x, phi;
  } refs[] = {
      {0.0, 0.5},
      {1.0, 0.8413447460685429485852},
      {1.96, 0.9750021048517795637872},
      {-3.0, 0.001349898031630094526652},
      {-6.0, 9.865876450376981407009e-10},
  };
  double worst = 0.0;
  for (const auto& r : refs) worst = std::max(worst, std::fabs(std_normal_cdf(r.x) - r.phi));
  push(out, "normal-cdf values", "reference values on [-6, 2]", worst, 0.0, 1e-12);
}

void check_ar1(const ValidateOptions& opt, std::vector<CheckResult>& out) {
  const double rhos[] = {0.0, 0.5, 0.75};
  const std::size_t n = 100000, p = 5;
  int cell = 0;
  for (double rho : rhos) {
    Rng rng(opt.seed.with_stream(opt.seed.stream ^ (0x40 + cell++)));
    const SampleMatrix y = gen_ar1_gaussian_rows(n, p, rho, rng);
    // mean, variance, lag-1 and lag-2 products between columns 1,2,3
    double v1 = 0.0, lag1 = 0.0, lag2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = y.row(i);
      v1 += row[1] * row[1];
      lag1 += row[1] * row[2];
      lag2 += row[1] * row[3];
    }
    v1 /= static_cast<double>(n);
    lag1 /= static_cast<double>(n);
    lag2 /= static_cast<double>(n);
    const std::string tag = "ar1[rho=" + format_real(rho) + "]";
    push(out, tag + " var", "column variance = 1", v1, 1.0, 0.02);
    push(out, tag + " lag1", "lag-1 correlation = rho", lag1 / v1, rho, 0.02);
    push(out, tag + " lag2", "lag-2 correlation = rho^2", lag2 / v1, rho * rho,
         0.02);
  }
}

void check_beta_normal_ks(const ValidateOptions& opt,
                          std::vector<CheckResult>& out) {
  // the beta family with v=1 must reduce to N(0,1)
  const WeightSampler sampler(WeightFamily::beta_weights(0.5, 1.5, 1.0));
  Rng rng(opt.seed.with_stream(opt.seed.stream ^ 0x50));
  const std::size_t draws = 100000;
  std::vector<double> sample(draws);
  for (std::size_t i = 0; i < draws; ++i) sample[i] = sampler(rng);
  std::sort(sample.begin(), sample.end());
  double d = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double f = std_normal_cdf(sample[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(draws);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(draws);
    d = std::max(d, std::max(f - lo, hi - f));
  }
  const double critical = 1.63 / std::sqrt(static_cast<double>(draws));
  push_upper(out, "beta-normal-ks[v=1]",
             "KS distance to N(0,1) below the 1% critical value", d, critical);
}

void check_rng_reproducibility(const ValidateOptions& opt,
                               std::vector<CheckResult>& out) {
  Rng a(opt.seed);
  Rng b(opt.seed);
  Rng c(opt.seed.with_stream(opt.seed.stream ^ 1));
  std::size_t mismatches = 0;
  bool streams_differ = false;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t va = a.next_u64();
    if (va != b.next_u64()) ++mismatches;
    if (va != c.next_u64()) streams_differ = true;
  }
  push(out, "rng-reproducibility", "identical (seed,stream) -> identical draws",
       static_cast<double>(mismatches), 0.0, 0.0);
  push(out, "rng-stream-separation", "distinct stream ids -> distinct draws",
       streams_differ ? 1.0 : 0.0, 1.0, 0.0);
}

}  // namespace

const std::vector<std::string>& validation_check_names() {
  static const std::vector<std::string> names = {
      "epsilon-law",   "subset-law",      "wk-invariance", "tail-bound",
      "weight-moments", "third-order-params", "gamma-roundtrip", "normal-cdf",
      "ar1",           "beta-normal-ks",  "rng"};
  return names;
}

std::vector<CheckResult> run_validation_suite(const ValidateOptions& options) {
  const std::string& only = options.only;
  const auto& names = validation_check_names();
  if (!only.empty() && std::find(names.begin(), names.end(), only) == names.end())
    throw std::invalid_argument("unknown check '" + only + "'");
  auto wanted = [&](const char* name) { return only.empty() || only == name; };

  std::vector<CheckResult> out;
  if (wanted("epsilon-law")) check_epsilon_law(options, out);
  if (wanted("subset-law")) check_subset_law(options, out);
  if (wanted("wk-invariance")) check_wk_invariance(out);
  if (wanted("tail-bound")) check_tail_bound(options, out);
  if (wanted("weight-moments")) check_weight_moments(options, out);
  if (wanted("third-order-params")) check_third_order_params(out);
  if (wanted("gamma-roundtrip")) check_gamma_roundtrip(out);
  if (wanted("normal-cdf")) check_normal_cdf(out);
  if (wanted("ar1")) check_ar1(options, out);
  if (wanted("beta-normal-ks")) check_beta_normal_ks(options, out);
  if (wanted("rng")) check_rng_reproducibility(options, out);
  return out;
}

}  // namespace maxboot
