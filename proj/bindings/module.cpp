#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxboot/bootstrap.hpp"
#include "maxboot/distributions.hpp"
#include "maxboot/lindeberg.hpp"
#include "maxboot/simulation.hpp"
#include "maxboot/special.hpp"
#include "maxboot/statistics.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using maxboot::BootstrapScheme;
using maxboot::MarginalSpec;
using maxboot::SampleMatrix;
using maxboot::WeightFamily;

SampleMatrix matrix_from_array(const py::array_t<double>& array) {
  if (array.ndim() != 2)
    throw py::value_error("expected a 2-D array of shape (n, p)");
  const auto n = static_cast<std::size_t>(array.shape(0));
  const auto p = static_cast<std::size_t>(array.shape(1));
  std::vector<double> values(n * p);
  auto view = array.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) values[i * p + j] = view(i, j);
  return SampleMatrix(n, p, std::move(values));
}

py::array_t<double> array_from_matrix(const SampleMatrix& x) {
  py::array_t<double> out({x.n(), x.p()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < x.n(); ++i)
    for (std::size_t j = 0; j < x.p(); ++j) view(i, j) = x(i, j);
  return out;
}

std::vector<double> vector_or_zeros(const py::object& obj, std::size_t p,
                                    const char* name) {
  if (obj.is_none()) return std::vector<double>(p, 0.0);
  auto values = obj.cast<std::vector<double>>();
  if (values.size() != p)
    throw py::value_error(std::string(name) + " has length " +
                          std::to_string(values.size()) + " but p = " +
                          std::to_string(p));
  return values;
}

WeightFamily family_from_name(const std::string& name, double gamma,
                              double alpha, double beta, double v) {
  if (name == "gaussian") return WeightFamily::gaussian_weights();
  if (name == "rademacher") return WeightFamily::rademacher_weights();
  if (name == "mammen3" || name == "third_order")
    return WeightFamily::third_order_weights(gamma);
  if (name == "beta") return WeightFamily::beta_weights(alpha, beta, v);
  throw py::value_error("unknown weight family '" + name +
                        "' (valid: gaussian, rademacher, mammen3, beta)");
}

BootstrapScheme scheme_from_name(const std::string& name, std::size_t num_boot,
                                 bool abs_variant, bool centered, double gamma,
                                 double alpha, double beta, double v) {
  BootstrapScheme scheme;
  if (name == "empirical") {
    scheme = BootstrapScheme::empirical(num_boot, abs_variant);
  } else {
    scheme = BootstrapScheme::multiplier(
        family_from_name(name, gamma, alpha, beta, v), num_boot, abs_variant);
  }
  scheme.centered = centered;
  return scheme;
}

MarginalSpec marginal_from_name(const std::string& family, double shape) {
  if (family == "weibull") return MarginalSpec::weibull(shape);
  if (family == "gamma") return MarginalSpec::gamma(shape);
  throw py::value_error("unknown marginal '" + family +
                        "' (valid: weibull, gamma)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bootstrap critical values for max statistics of "
            "high-dimensional sample means";

  m.def(
      "max_statistic",
      [](const py::array_t<double>& x, const py::object& mu, const py::object& t) {
        const SampleMatrix matrix = matrix_from_array(x);
        return maxboot::max_statistic(
            matrix, maxboot::MeanVector(vector_or_zeros(mu, matrix.p(), "mu")),
            maxboot::ShiftVector(vector_or_zeros(t, matrix.p(), "t")));
      },
      "x"_a, "mu"_a = py::none(), "t"_a = py::none(),
      "max_j n^{-1/2} sum_i (x_ij - mu_j + t_j)");

  m.def(
      "max_abs_statistic",
      [](const py::array_t<double>& x, const py::object& mu, const py::object& t) {
        const SampleMatrix matrix = matrix_from_array(x);
        return maxboot::max_abs_statistic(
            matrix, maxboot::MeanVector(vector_or_zeros(mu, matrix.p(), "mu")),
            maxboot::ShiftVector(vector_or_zeros(t, matrix.p(), "t")));
      },
      "x"_a, "mu"_a = py::none(), "t"_a = py::none());

  m.def(
      "empirical_quantile",
      [](std::vector<double> samples, double gamma) {
        return maxboot::empirical_quantile(std::move(samples), gamma);
      },
      "samples"_a, "gamma"_a,
      "ceil(gamma*B)-th order statistic of the B samples");

  m.def(
      "covariance_estimate",
      [](const py::array_t<double>& x) {
        const maxboot::CovarianceEstimate cov =
            maxboot::covariance_estimate(matrix_from_array(x));
        py::array_t<double> out({cov.p, cov.p});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t j = 0; j < cov.p; ++j)
          for (std::size_t k = 0; k < cov.p; ++k) view(j, k) = cov(j, k);
        return out;
      },
      "x"_a, "n^{-1} sum_i (x_i - xbar)(x_i - xbar)'");

  m.def("std_normal_cdf", &maxboot::std_normal_cdf, "x"_a);
  m.def("std_normal_quantile", &maxboot::std_normal_quantile, "p"_a);
  m.def("regularized_gamma_p", &maxboot::regularized_gamma_p, "k"_a, "x"_a);
  m.def("weibull_quantile", &maxboot::weibull_quantile, "u"_a, "k"_a);
  m.def("gamma_quantile", &maxboot::gamma_quantile, "u"_a, "k"_a);

  m.def(
      "third_order_params",
      [](double gamma) {
        const maxboot::ThirdOrderParams p = maxboot::third_order_params(gamma);
        return py::dict("sigma"_a = p.sigma, "a"_a = p.a, "b"_a = p.b,
                        "gamma"_a = p.gamma);
      },
      "gamma"_a);

  m.def(
      "sample_weights",
      [](const std::string& family, std::size_t count, std::uint64_t seed,
         std::uint64_t stream, double gamma, double alpha, double beta, double v) {
        const maxboot::WeightSampler sampler(
            family_from_name(family, gamma, alpha, beta, v));
        maxboot::Rng rng(maxboot::RngStream{seed, stream});
        py::array_t<double> out(static_cast<py::ssize_t>(count));
        auto view = out.mutable_unchecked<1>();
        for (std::size_t i = 0; i < count; ++i)
          view(static_cast<py::ssize_t>(i)) = sampler(rng);
        return out;
      },
      "family"_a, "count"_a, "seed"_a, "stream"_a = 0, "gamma"_a = 0.2,
      "alpha"_a = 0.5, "beta"_a = 1.5, "v"_a = 0.0);

  m.def(
      "gen_ar1_gaussian_rows",
      [](std::size_t n, std::size_t p, double rho, std::uint64_t seed,
         std::uint64_t stream) {
        maxboot::Rng rng(maxboot::RngStream{seed, stream});
        return array_from_matrix(maxboot::gen_ar1_gaussian_rows(n, p, rho, rng));
      },
      "n"_a, "p"_a, "rho"_a, "seed"_a, "stream"_a = 0);

  m.def(
      "gen_design",
      [](bool symmetric, std::size_t n, std::size_t p, double rho,
         const std::string& family, double shape, std::uint64_t seed,
         std::uint64_t stream) {
        const MarginalSpec marginal = marginal_from_name(family, shape);
        auto [x, mu] = symmetric
                           ? maxboot::gen_symmetric(n, p, rho, marginal,
                                                    {seed, stream})
                           : maxboot::gen_asymmetric(n, p, rho, marginal,
                                                     {seed, stream});
        return py::make_tuple(array_from_matrix(x), mu.mu);
      },
      "symmetric"_a, "n"_a, "p"_a, "rho"_a, "family"_a, "shape"_a, "seed"_a,
      "stream"_a = 0, "Copula design data and its analytic mean vector");

  m.def(
      "critical_value",
      [](const py::array_t<double>& x, const py::object& t, double alpha,
         const std::string& scheme, std::size_t num_boot, std::uint64_t seed,
         std::uint64_t stream, bool abs, bool centered, double gamma,
         double beta_alpha, double beta_beta, double beta_v, unsigned threads,
         bool exact) {
        const SampleMatrix matrix = matrix_from_array(x);
        const maxboot::ShiftVector shift(
            vector_or_zeros(t, matrix.p(), "t"));
        const BootstrapScheme boot = scheme_from_name(
            scheme, num_boot, abs, centered, gamma, beta_alpha, beta_beta, beta_v);
        maxboot::CriticalValueResult cv;
        if (exact) {
          cv = maxboot::exact_critical_value(matrix, shift, alpha, boot);
        } else {
          maxboot::CriticalValueOptions options;
          options.threads = threads;
          cv = maxboot::critical_value(matrix, shift, alpha, boot,
                                       {seed, stream}, options);
        }
        return py::dict("critical_value"_a = cv.critical_value,
                        "alpha"_a = cv.alpha,
                        "scheme"_a = maxboot::scheme_label(cv.scheme),
                        "exact"_a = cv.exact, "seed"_a = seed);
      },
      "x"_a, "t"_a = py::none(), "alpha"_a = 0.1, "scheme"_a = "empirical",
      "num_boot"_a = 500, "seed"_a = 0, "stream"_a = 0, "abs"_a = false,
      "centered"_a = true, "gamma"_a = 0.2, "beta_alpha"_a = 0.5,
      "beta_beta"_a = 1.5, "beta_v"_a = 0.0, "threads"_a = 1, "exact"_a = false);

  m.def(
      "decide",
      [](double statistic, double critical_value, double eta) {
        maxboot::CriticalValueResult cv;
        cv.critical_value = critical_value;
        return maxboot::decide(statistic, cv, eta).reject;
      },
      "statistic"_a, "critical_value"_a, "eta"_a = 0.0,
      "reject <=> statistic > critical_value + eta");

  m.def(
      "estimate_rejection",
      [](bool symmetric, std::size_t n, std::size_t p, double rho,
         const std::string& family, double shape, double alpha,
         const std::string& scheme, std::size_t num_boot, std::size_t num_reps,
         std::uint64_t seed, bool abs, bool centered, double gamma,
         unsigned threads) {
        maxboot::DesignSpec design;
        design.symmetric = symmetric;
        design.n = n;
        design.p = p;
        design.rho = rho;
        design.marginal = marginal_from_name(family, shape);
        design.alpha = alpha;
        design.scheme =
            scheme_from_name(scheme, num_boot, abs, centered, gamma, 0.5, 1.5, 0.0);
        design.num_reps = num_reps;
        design.base_seed = {seed, 0};
        const maxboot::RejectionEstimate estimate =
            maxboot::estimate_rejection(design, threads);
        return py::dict("rejection_rate"_a = estimate.rejection_rate,
                        "mc_std_error"_a = estimate.mc_std_error,
                        "rejections"_a = estimate.rejections,
                        "num_reps"_a = num_reps,
                        "wall_time_seconds"_a = estimate.wall_time_seconds);
      },
      "symmetric"_a, "n"_a, "p"_a, "rho"_a, "family"_a, "shape"_a,
      "alpha"_a = 0.1, "scheme"_a = "empirical", "num_boot"_a = 500,
      "num_reps"_a = 1000, "seed"_a = 0, "abs"_a = false, "centered"_a = true,
      "gamma"_a = 0.2, "threads"_a = 1);

  m.def(
      "exact_conditional_draws",
      [](const py::array_t<double>& x, const py::object& t,
         const std::string& scheme, bool abs) {
        const SampleMatrix matrix = matrix_from_array(x);
        const BootstrapScheme boot =
            scheme_from_name(scheme, 1, abs, true, 0.2, 0.5, 1.5, 0.0);
        return maxboot::exact_conditional_draws(
            matrix, maxboot::ShiftVector(vector_or_zeros(t, matrix.p(), "t")),
            boot);
      },
      "x"_a, "t"_a = py::none(), "scheme"_a = "empirical", "abs"_a = false);

  m.def(
      "lindeberg_epsilon_law",
      [](std::size_t n, std::size_t reps, std::uint64_t seed) {
        maxboot::Rng rng(maxboot::RngStream{seed, 0});
        const maxboot::EpsilonLawResult law =
            maxboot::lindeberg_epsilon_law(n, reps, rng);
        return py::dict("counts"_a = law.counts, "reps"_a = law.reps,
                        "exact_atom"_a = law.exact_atom);
      },
      "n"_a, "reps"_a, "seed"_a);

  m.def(
      "lindeberg_draw",
      [](const std::vector<std::vector<double>>& x_rows,
         const std::vector<std::vector<double>>& y_rows, std::size_t k,
         std::uint64_t seed, std::uint64_t stream) {
        maxboot::Rng rng(maxboot::RngStream{seed, stream});
        const maxboot::InterpolationDraw draw =
            maxboot::lindeberg_draw(x_rows, y_rows, k, rng);
        return py::dict("k"_a = draw.k, "epsilon"_a = draw.epsilon,
                        "w"_a = draw.w);
      },
      "x_rows"_a, "y_rows"_a, "k"_a, "seed"_a, "stream"_a = 0);

  m.def(
      "exchangeable_tail_check",
      [](const std::vector<double>& a, const std::vector<double>& pool, double t,
         std::size_t reps, std::uint64_t seed) {
        maxboot::Rng rng(maxboot::RngStream{seed, 0});
        const maxboot::TailCheckReport report =
            maxboot::exchangeable_tail_check(a, pool, t, reps, rng);
        return py::dict("empirical_tail"_a = report.empirical_tail,
                        "bound"_a = report.bound, "reps"_a = report.reps,
                        "threshold"_a = report.threshold);
      },
      "a"_a, "pool"_a, "t"_a, "reps"_a, "seed"_a);

#ifdef VERSION_INFO
#define MAXBOOT_STR(x) #x
#define MAXBOOT_XSTR(x) MAXBOOT_STR(x)
  m.attr("__version__") = MAXBOOT_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "0.1.0";
#endif
}
