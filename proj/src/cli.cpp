#include "maxboot/cli.hpp"

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxboot/bootstrap.hpp"
#include "maxboot/io.hpp"
#include "maxboot/parallel.hpp"
#include "maxboot/simulation.hpp"
#include "maxboot/validate.hpp"

namespace maxboot {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

// Flat JSON object builder with pinned number formatting (format_real).
class JsonObject {
 public:
  JsonObject& real(const std::string& key, double value) {
    return raw(key, format_real(value));
  }
  JsonObject& integer(const std::string& key, long long value) {
    return raw(key, std::to_string(value));
  }
  JsonObject& unsigned_integer(const std::string& key, std::uint64_t value) {
    return raw(key, std::to_string(value));
  }
  JsonObject& boolean(const std::string& key, bool value) {
    return raw(key, value ? "true" : "false");
  }
  JsonObject& string(const std::string& key, const std::string& value) {
    return raw(key, "\"" + json_escape(value) + "\"");
  }
  JsonObject& raw(const std::string& key, const std::string& value) {
    if (!first_) body_ += ",";
    first_ = false;
    body_ += "\"" + json_escape(key) + "\":" + value;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
  bool first_ = true;
};

struct SchemeFlags {
  std::string bootstrap = "empirical";
  double gamma = 0.2;
  double beta_alpha = 0.5;
  double beta_beta = 1.5;
  double beta_v = 0.0;
  bool abs_variant = false;
  bool uncentered = false;
};

void add_scheme_flags(CLI::App* cmd, SchemeFlags& flags) {
  cmd->add_option("--bootstrap", flags.bootstrap,
                  "Bootstrap scheme: empirical, gaussian, rademacher, "
                  "mammen3, beta")
      ->default_str(flags.bootstrap);
  cmd->add_option("--gamma", flags.gamma,
                  "mammen3 weight parameter (0 < gamma < 0.27639)");
  cmd->add_option("--beta-alpha", flags.beta_alpha, "beta weight alpha");
  cmd->add_option("--beta-beta", flags.beta_beta, "beta weight beta");
  cmd->add_option("--beta-v", flags.beta_v, "beta weight Gaussian share v in [0,1]");
  cmd->add_flag("--abs", flags.abs_variant,
                "Use the absolute-value (two-sided) statistic");
  cmd->add_flag("--uncentered", flags.uncentered,
                "Multiplier draws without centering the rows");
}

WeightFamily family_from_flags(const SchemeFlags& flags) {
  if (flags.bootstrap == "gaussian") return WeightFamily::gaussian_weights();
  if (flags.bootstrap == "rademacher") return WeightFamily::rademacher_weights();
  if (flags.bootstrap == "mammen3")
    return WeightFamily::third_order_weights(flags.gamma);
  if (flags.bootstrap == "beta")
    return WeightFamily::beta_weights(flags.beta_alpha, flags.beta_beta,
                                      flags.beta_v);
  throw ConfigError("unknown bootstrap scheme '" + flags.bootstrap +
                    "' (valid: empirical, gaussian, rademacher, mammen3, beta)");
}

BootstrapScheme scheme_from_flags(const SchemeFlags& flags, std::size_t num_boot) {
  BootstrapScheme scheme;
  if (flags.bootstrap == "empirical") {
    scheme = BootstrapScheme::empirical(num_boot, flags.abs_variant);
  } else {
    scheme =
        BootstrapScheme::multiplier(family_from_flags(flags), num_boot,
                                    flags.abs_variant);
  }
  scheme.centered = !flags.uncentered;
  return scheme;
}

std::string scheme_description(const BootstrapScheme& scheme) {
  const std::string params = scheme_params_label(scheme);
  std::string label = scheme_label(scheme);
  if (!params.empty()) label += "(" + params + ")";
  return label;
}

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed) {
  if (seed_given) return seed;
  std::random_device device;
  const std::uint64_t drawn =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  std::fprintf(stderr, "seed drawn from the OS: %llu (pass --seed %llu to reproduce)\n",
               static_cast<unsigned long long>(drawn),
               static_cast<unsigned long long>(drawn));
  return drawn;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  write_file_atomic(out_path, content);
}

int cmd_test(const std::string& data_path, const std::string& t_path,
             const std::string& mu_path, bool t_scalar_given, double t_scalar,
             bool mu_scalar_given, double mu_scalar, double alpha,
             const SchemeFlags& flags, const std::string& b_spec, double eta,
             bool seed_given, std::uint64_t seed, unsigned threads,
             const std::string& out_path) {
  const SampleMatrix x = read_csv_matrix(data_path);
  const std::size_t p = x.p();

  ShiftVector t = ShiftVector::zeros(p);
  if (!t_path.empty())
    t = ShiftVector(read_csv_vector(t_path));
  else if (t_scalar_given)
    t = ShiftVector::constant(p, t_scalar);
  if (t.size() != p)
    throw ConfigError("t-file has length " + std::to_string(t.size()) +
                      " but the data has p = " + std::to_string(p) + " columns");

  // Default: self-centered statistic (mu_hat = column means), so T_n
  // measures deviations from the sample mean. The bootstrap draws center
  // by the sample mean regardless.
  MeanVector mu = MeanVector(column_means(x));
  if (!mu_path.empty())
    mu = MeanVector(read_csv_vector(mu_path));
  else if (mu_scalar_given)
    mu = MeanVector::constant(p, mu_scalar);
  if (mu.size() != p)
    throw ConfigError("mu-file has length " + std::to_string(mu.size()) +
                      " but the data has p = " + std::to_string(p) + " columns");

  const bool exact = (b_spec == "exact");
  std::size_t num_boot = 0;
  if (!exact) {
    try {
      const long long parsed = std::stoll(b_spec);
      if (parsed < 1) throw std::invalid_argument("non-positive");
      num_boot = static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
      throw ConfigError("--B expects a positive integer or 'exact', got '" +
                        b_spec + "'");
    }
  }
  const BootstrapScheme scheme = scheme_from_flags(flags, exact ? 1 : num_boot);
  if (exact && !exact_enumeration_supported(scheme, x.n()))
    throw ConfigError(
        "--B exact requires the empirical bootstrap with n <= " +
        std::to_string(kMaxExactEmpiricalN) + " or rademacher with n <= " +
        std::to_string(kMaxExactRademacherN) + " (data has n = " +
        std::to_string(x.n()) + ")");

  const std::uint64_t used_seed = exact ? seed : resolve_seed(seed_given, seed);

  const double statistic = scheme.abs_variant ? max_abs_statistic(x, mu, t)
                                              : max_statistic(x, mu, t);
  CriticalValueOptions options;
  options.threads = resolve_thread_count(threads);
  const CriticalValueResult cv =
      exact ? exact_critical_value(x, t, alpha, scheme)
            : critical_value(x, t, alpha, scheme, RngStream{used_seed, 0}, options);
  const TestDecision decision = decide(statistic, cv, eta);

  JsonObject doc;
  doc.real("T_n", statistic)
      .real("critical_value", cv.critical_value)
      .real("alpha", alpha)
      .string("scheme", scheme_description(scheme))
      .raw("B", exact ? "\"exact\"" : std::to_string(num_boot))
      .real("eta", eta)
      .boolean("reject", decision.reject)
      .unsigned_integer("seed", used_seed);
  emit(doc.str() + "\n", out_path);
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 bool seed_given, std::uint64_t seed, unsigned threads,
                 bool progress) {
  const std::string text = read_file(config_path);
  std::vector<DesignSpec> designs;
  if (seed_given) {
    designs = parse_design_configs(text, config_path, &seed);
  } else {
    designs = parse_design_configs(text, config_path);
  }
  if (out_path.empty()) throw ConfigError("simulate requires --out FILE");
  run_table(designs, out_path, resolve_thread_count(threads), progress);
  return kExitOk;
}

int cmd_validate(const ValidateOptions& options, const std::string& out_path) {
  const std::vector<CheckResult> checks = run_validation_suite(options);
  std::size_t failures = 0;
  std::string body;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& c = checks[i];
    if (!c.pass) ++failures;
    JsonObject entry;
    entry.string("check", c.check)
        .string("target", c.target)
        .real("observed", c.observed)
        .real("expected", c.expected)
        .real("tolerance", c.tolerance)
        .boolean("pass", c.pass);
    if (i) body += ",\n  ";
    body += entry.str();
  }
  std::string doc = "{\"checks\": [\n  " + body + "\n],\n";
  doc += "\"total\": " + std::to_string(checks.size()) + ",\n";
  doc += "\"failures\": " + std::to_string(failures) + "}\n";
  emit(doc, out_path);
  if (failures > 0) {
    std::fprintf(stderr, "%zu of %zu checks failed\n", failures, checks.size());
    return kExitValidationFailure;
  }
  return kExitOk;
}

int cmd_weights(const SchemeFlags& flags, std::size_t count, bool seed_given,
                std::uint64_t seed, const std::string& out_path) {
  const WeightFamily family = family_from_flags(flags);
  const WeightSampler sampler(family);
  const std::uint64_t used_seed = resolve_seed(seed_given, seed);
  Rng rng(RngStream{used_seed, 0});

  std::string csv = "draw\n";
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0, psi2 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double e = sampler(rng);
    csv += format_real(e);
    csv += '\n';
    const double e2 = e * e;
    m1 += e;
    m2 += e2;
    m3 += e2 * e;
    m4 += e2 * e2;
    psi2 += std::exp(0.25 * e2);
  }
  const double inv = count ? 1.0 / static_cast<double>(count) : 0.0;
  JsonObject summary;
  summary.unsigned_integer("count", count)
      .string("family", scheme_description(BootstrapScheme::multiplier(family, 1)))
      .real("mean", m1 * inv)
      .real("second_moment", m2 * inv)
      .real("third_moment", m3 * inv)
      .real("fourth_moment", m4 * inv)
      .real("exp_quarter_square", psi2 * inv)
      .unsigned_integer("seed", used_seed);
  const std::string summary_text = summary.str() + "\n";

  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
    std::fputs(summary_text.c_str(), stderr);
  } else {
    write_file_atomic(out_path, csv);
    std::fputs(summary_text.c_str(), stdout);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "maxboot: Gaussian and bootstrap critical values for max statistics "
      "of high-dimensional sample means, with a Monte Carlo study harness "
      "and construction diagnostics"};
  app.require_subcommand(1);

  // ---- test ----
  auto* test = app.add_subcommand(
      "test", "Compute the max statistic and a bootstrap critical value for "
              "a CSV data set");
  std::string data_path, t_path, mu_path, out_path, b_spec = "500";
  double t_scalar = 0.0, mu_scalar = 0.0, alpha = 0.1, eta = 0.0;
  SchemeFlags test_flags;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  test->add_option("--data", data_path, "CSV with rows = observations")
      ->required();
  auto* t_file_opt = test->add_option("--t-file", t_path, "CSV with the p-vector t");
  auto* t_opt = test->add_option("--t", t_scalar, "Constant shift t (broadcast)");
  auto* mu_file_opt =
      test->add_option("--mu-file", mu_path, "CSV with the p-vector mu");
  auto* mu_opt = test->add_option("--mu", mu_scalar,
                                  "Constant mean mu (broadcast); default is "
                                  "the sample column mean");
  t_opt->excludes(t_file_opt);
  mu_opt->excludes(mu_file_opt);
  test->add_option("--alpha", alpha, "Nominal level in (0,1)")->default_str("0.1");
  add_scheme_flags(test, test_flags);
  test->add_option("--B", b_spec, "Bootstrap replications, or 'exact' for the "
                                  "small-n enumeration oracle")
      ->default_str("500");
  test->add_option("--eta", eta, "Infinitesimal factor added to the critical value")
      ->default_str("0");
  auto* test_seed = test->add_option("--seed", seed, "RNG seed");
  test->add_option("--threads", threads,
                   "Worker threads (default: THREADS env, then logical cores)");
  test->add_option("--out", out_path, "Write the JSON report here (default stdout)");

  // ---- simulate ----
  auto* simulate = app.add_subcommand(
      "simulate", "Estimate rejection probabilities for a JSON list of designs");
  std::string config_path, sim_out;
  std::uint64_t sim_seed = 0;
  unsigned sim_threads = 0;
  bool progress = false;
  simulate->add_option("--config", config_path, "JSON design config")->required();
  simulate->add_option("--out", sim_out, "Output CSV (appended; resumable)")
      ->required();
  auto* sim_seed_opt = simulate->add_option(
      "--seed", sim_seed, "Fallback base seed for designs without one");
  simulate->add_option("--threads", sim_threads,
                       "Worker threads (default: THREADS env, then logical cores)");
  simulate->add_flag("--progress", progress, "Print per-design progress to stderr");

  // ---- validate ----
  auto* validate = app.add_subcommand(
      "validate", "Run the construction diagnostics (interpolation laws, "
                  "tail bound, weight moments, numeric kernels)");
  ValidateOptions vopt;
  std::string validate_out;
  std::uint64_t validate_seed = vopt.seed.seed;
  std::string only_help = "Run a single check group:";
  for (const std::string& name : validation_check_names()) only_help += " " + name;
  validate->add_option("--only", vopt.only, only_help);
  validate->add_option("--n", vopt.n, "Sample size for the epsilon-law check")
      ->default_str("4");
  validate->add_option("--reps", vopt.reps, "Monte Carlo reps for the epsilon law")
      ->default_str("100000");
  validate->add_option("--tail-reps", vopt.tail_reps,
                       "Monte Carlo reps per tail-bound cell")
      ->default_str("1000000");
  validate->add_option("--moment-draws", vopt.moment_draws,
                       "Draws for the weight-moment check")
      ->default_str("1000000");
  validate->add_option("--family", vopt.family,
                       "Weight family for weight-moments")
      ->default_str("mammen3");
  validate->add_option("--gamma", vopt.gamma, "mammen3 gamma")->default_str("0.2");
  validate->add_option("--beta-alpha", vopt.beta_alpha, "beta weight alpha");
  validate->add_option("--beta-beta", vopt.beta_beta, "beta weight beta");
  validate->add_option("--beta-v", vopt.beta_v, "beta weight v");
  validate->add_option("--seed", validate_seed, "RNG seed");
  validate->add_option("--out", validate_out, "Write the JSON report here");

  // ---- weights ----
  auto* weights = app.add_subcommand(
      "weights", "Sample multiplier weights and report their moments");
  SchemeFlags weight_flags;
  weight_flags.bootstrap = "mammen3";
  std::size_t count = 1000;
  std::string weights_out;
  std::uint64_t weights_seed = 0;
  weights->add_option("--family", weight_flags.bootstrap,
                      "gaussian, rademacher, mammen3, beta")
      ->default_str("mammen3");
  weights->add_option("--gamma", weight_flags.gamma, "mammen3 gamma")
      ->default_str("0.2");
  weights->add_option("--beta-alpha", weight_flags.beta_alpha, "beta alpha");
  weights->add_option("--beta-beta", weight_flags.beta_beta, "beta beta");
  weights->add_option("--beta-v", weight_flags.beta_v, "beta v");
  weights->add_option("--count", count, "Number of draws")->default_str("1000");
  auto* weights_seed_opt = weights->add_option("--seed", weights_seed, "RNG seed");
  weights->add_option("--out", weights_out,
                      "Write the draw CSV here (summary JSON then goes to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (test->parsed()) {
      if (test_flags.bootstrap == "empirical") {
        // validate multiplier-only flags early
        if (test_flags.uncentered)
          throw ConfigError("--uncentered applies to multiplier schemes only");
      }
      return cmd_test(data_path, t_path, mu_path, t_opt->count() > 0, t_scalar,
                      mu_opt->count() > 0, mu_scalar, alpha, test_flags, b_spec,
                      eta, test_seed->count() > 0, seed, threads, out_path);
    }
    if (simulate->parsed()) {
      return cmd_simulate(config_path, sim_out, sim_seed_opt->count() > 0,
                          sim_seed, sim_threads, progress);
    }
    if (validate->parsed()) {
      vopt.seed = RngStream{validate_seed, 0};
      return cmd_validate(vopt, validate_out);
    }
    if (weights->parsed()) {
      return cmd_weights(weight_flags, count, weights_seed_opt->count() > 0,
                         weights_seed, weights_out);
    }
  } catch (const IoError& err) {
    std::fprintf(stderr, "I/O error: %s\n", err.what());
    return kExitIo;
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const std::domain_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace maxboot
