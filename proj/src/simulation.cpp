#include "maxboot/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "maxboot/distributions.hpp"
#include "maxboot/format.hpp"
#include "maxboot/parallel.hpp"
#include "maxboot/special.hpp"

namespace maxboot {

namespace {

constexpr std::uint64_t kBootstrapPurposeBit = std::uint64_t{1} << 32;
constexpr std::uint64_t kSecondCopyBit = std::uint64_t{1} << 63;

// Largest double below 1; Phi(y) can round to 1 for y beyond ~8.2 and the
// quantile functions are only defined on [0,1).
constexpr double kMaxOpenUnit = 0x1.fffffffffffffp-1;

}  // namespace

double MarginalSpec::mean() const {
  switch (family) {
    case Family::weibull:
      return std::exp(std::lgamma(1.0 + 1.0 / shape));
    case Family::gamma:
      return shape;
    case Family::degenerate:
      return shape;
  }
  throw std::logic_error("unknown marginal family");
}

double MarginalSpec::quantile(double u) const {
  switch (family) {
    case Family::weibull:
      return weibull_quantile(u, shape);
    case Family::gamma:
      return gamma_quantile(u, shape);
    case Family::degenerate:
      return shape;
  }
  throw std::logic_error("unknown marginal family");
}

bool MarginalSpec::on_study_grid() const {
  if (family == Family::weibull)
    return shape == 2.0 || shape == 3.0 || shape == 4.0;
  if (family == Family::gamma)
    return shape == 1.0 || shape == 3.0 || shape == 5.0;
  return false;
}

std::string MarginalSpec::name() const {
  switch (family) {
    case Family::weibull:
      return "weibull";
    case Family::gamma:
      return "gamma";
    case Family::degenerate:
      return "degenerate";
  }
  return "?";
}

std::string scheme_label(const BootstrapScheme& scheme) {
  if (scheme.kind == BootstrapScheme::Kind::empirical) return "empirical";
  switch (scheme.family.kind) {
    case WeightFamily::Kind::gaussian:
      return "gaussian";
    case WeightFamily::Kind::rademacher:
      return "rademacher";
    case WeightFamily::Kind::third_order:
      return "mammen3";
    case WeightFamily::Kind::beta:
      return "beta";
  }
  return "?";
}

std::string scheme_params_label(const BootstrapScheme& scheme) {
  if (scheme.kind == BootstrapScheme::Kind::empirical) return "";
  if (scheme.family.kind == WeightFamily::Kind::third_order)
    return "gamma=" + format_real(scheme.family.gamma);
  if (scheme.family.kind == WeightFamily::Kind::beta)
    return "alpha=" + format_real(scheme.family.alpha) +
           ";beta=" + format_real(scheme.family.beta) +
           ";v=" + format_real(scheme.family.v);
  return "";
}

std::string DesignSpec::deviations() const {
  std::vector<std::string> out;
  const std::size_t study_n = symmetric ? 100 : 400;
  if (n != study_n) out.push_back("n=" + std::to_string(n));
  if (p != 400 && p != 800) out.push_back("p=" + std::to_string(p));
  if (!(rho == 0.0 || rho == 0.25 || rho == 0.5 || rho == 0.75))
    out.push_back("rho=" + format_real(rho));
  if (!marginal.on_study_grid())
    out.push_back("marginal=" + marginal.name() + "(" + format_real(marginal.shape) + ")");
  if (alpha != 0.1) out.push_back("alpha=" + format_real(alpha));
  if (scheme.num_boot != 500) out.push_back("B=" + std::to_string(scheme.num_boot));
  if (num_reps != 20000) out.push_back("R=" + std::to_string(num_reps));
  const std::string label = scheme_label(scheme);
  if (label == "beta") out.push_back("scheme=beta");
  if (label == "mammen3" && scheme.family.gamma != 0.2)
    out.push_back("mammen3_gamma=" + format_real(scheme.family.gamma));
  if (scheme.abs_variant) out.push_back("abs");
  if (!scheme.centered) out.push_back("uncentered");
  std::string joined;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) joined += ';';
    joined += out[i];
  }
  return joined;
}

namespace {

void copula_transform(SampleMatrix& y, const MarginalSpec& marginal) {
  double* values = y.values().data();
  const std::size_t count = y.n() * y.p();
  for (std::size_t idx = 0; idx < count; ++idx) {
    double u = std_normal_cdf(values[idx]);
    if (u > kMaxOpenUnit) u = kMaxOpenUnit;
    values[idx] = marginal.quantile(u);
  }
}

}  // namespace

std::pair<SampleMatrix, MeanVector> gen_asymmetric(std::size_t n, std::size_t p,
                                                   double rho,
                                                   const MarginalSpec& marginal,
                                                   RngStream stream) {
  Rng rng(stream);
  SampleMatrix x = gen_ar1_gaussian_rows(n, p, rho, rng);
  copula_transform(x, marginal);
  return {std::move(x), MeanVector::constant(p, marginal.mean())};
}

std::pair<SampleMatrix, MeanVector> gen_symmetric(std::size_t n, std::size_t p,
                                                  double rho,
                                                  const MarginalSpec& marginal,
                                                  RngStream stream) {
  Rng rng1(stream);
  Rng rng2(stream.with_stream(stream.stream ^ kSecondCopyBit));
  SampleMatrix x = gen_ar1_gaussian_rows(n, p, rho, rng1);
  SampleMatrix x2 = gen_ar1_gaussian_rows(n, p, rho, rng2);
  copula_transform(x, marginal);
  copula_transform(x2, marginal);
  double* a = x.values().data();
  const double* b = x2.values().data();
  for (std::size_t idx = 0; idx < n * p; ++idx) a[idx] -= b[idx];
  return {std::move(x), MeanVector::zeros(p)};
}

RejectionEstimate estimate_rejection(const DesignSpec& design, unsigned threads) {
  if (design.num_reps == 0)
    throw std::invalid_argument("estimate_rejection: num_reps must be >= 1");
  if (!(design.alpha > 0.0 && design.alpha < 1.0))
    throw std::invalid_argument("estimate_rejection: alpha must lie in (0,1)");
  if (design.scheme.kind == BootstrapScheme::Kind::multiplier)
    validate_weight_family(design.scheme.family);

  const auto start = std::chrono::steady_clock::now();
  const std::size_t reps = design.num_reps;
  std::vector<std::uint8_t> rejected(reps, 0);

  parallel_for_index(reps, std::max(1u, threads), [&](std::size_t r) {
    try {
      const RngStream data_stream =
          design.base_seed.with_stream(design.base_seed.stream ^ r);
      const RngStream boot_stream = design.base_seed.with_stream(
          design.base_seed.stream ^ r ^ kBootstrapPurposeBit);
      auto [x, mu] =
          design.symmetric
              ? gen_symmetric(design.n, design.p, design.rho, design.marginal,
                              data_stream)
              : gen_asymmetric(design.n, design.p, design.rho, design.marginal,
                               data_stream);
      const ShiftVector t = ShiftVector::zeros(design.p);
      const double stat = design.scheme.abs_variant
                              ? max_abs_statistic(x, mu, t)
                              : max_statistic(x, mu, t);
      const CriticalValueResult cv =
          critical_value(x, t, design.alpha, design.scheme, boot_stream);
      rejected[r] = decide(stat, cv).reject ? 1 : 0;
    } catch (const std::exception& err) {
      throw std::runtime_error("replication " + std::to_string(r + 1) + ": " +
                               err.what());
    }
  });

  RejectionEstimate estimate;
  estimate.design = design;
  for (std::uint8_t flag : rejected) estimate.rejections += flag;
  const double r_hat = static_cast<double>(estimate.rejections) /
                       static_cast<double>(reps);
  estimate.rejection_rate = r_hat;
  estimate.mc_std_error =
      std::sqrt(r_hat * (1.0 - r_hat) / static_cast<double>(reps));
  estimate.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return estimate;
}

namespace {

std::string design_key(const DesignSpec& d) {
  std::string row;
  row += d.symmetric ? "1" : "0";
  row += ',' + d.marginal.name();
  row += ',' + format_real(d.marginal.shape);
  row += ',' + std::to_string(d.n);
  row += ',' + std::to_string(d.p);
  row += ',' + format_real(d.rho);
  row += ',' + format_real(d.alpha);
  row += ',' + scheme_label(d.scheme);
  row += ',' + scheme_params_label(d.scheme);
  row += ',' + std::to_string(d.scheme.num_boot);
  row += ',';
  row += d.scheme.abs_variant ? '1' : '0';
  row += ',';
  row += d.scheme.centered ? '1' : '0';
  row += ',' + std::to_string(d.num_reps);
  row += ',' + std::to_string(d.base_seed.seed);
  row += ',' + std::to_string(d.base_seed.stream);
  row += ',' + d.deviations();
  return row;
}

}  // namespace

std::string rejection_csv_header() {
  return "symmetric,family,shape,n,p,rho,alpha,scheme,scheme_params,num_boot,"
         "abs,centered,num_reps,seed,stream,deviations,rejection_rate,"
         "mc_std_error";
}

std::string rejection_csv_row(const RejectionEstimate& estimate) {
  return design_key(estimate.design) + ',' +
         format_real(estimate.rejection_rate) + ',' +
         format_real(estimate.mc_std_error);
}

std::vector<RejectionEstimate> run_table(const std::vector<DesignSpec>& configs,
                                         const std::string& csv_path,
                                         unsigned threads, bool print_progress) {
  if (configs.empty())
    throw std::invalid_argument("run_table: config list is empty");

  // Completed (design, seed) keys already in the sink are reused, not
  // recomputed, so interrupted runs resume where they stopped.
  std::map<std::string, std::pair<double, double>> completed;
  bool have_file = false;
  {
    std::ifstream in(csv_path);
    if (in.good()) {
      std::string line;
      bool first = true;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        have_file = true;
        if (first && line == rejection_csv_header()) {
          first = false;
          continue;
        }
        first = false;
        const std::size_t last = line.rfind(',');
        if (last == std::string::npos) continue;
        const std::size_t prev = line.rfind(',', last - 1);
        if (prev == std::string::npos) continue;
        try {
          const double rate = parse_real(line.substr(prev + 1, last - prev - 1));
          const double se = parse_real(line.substr(last + 1));
          completed[line.substr(0, prev)] = {rate, se};
        } catch (const std::exception&) {
          throw std::runtime_error("run_table: cannot parse existing row in " +
                                   csv_path + ": " + line);
        }
      }
    }
  }

  std::ofstream out(csv_path, std::ios::app);
  if (!out)
    throw std::runtime_error("run_table: cannot open output sink " + csv_path);
  if (!have_file) {
    out << rejection_csv_header() << '\n';
    out.flush();
  }

  std::vector<RejectionEstimate> results;
  results.reserve(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const DesignSpec& design = configs[c];
    const std::string key = design_key(design);
    auto it = completed.find(key);
    if (it != completed.end()) {
      RejectionEstimate cached;
      cached.design = design;
      cached.rejection_rate = it->second.first;
      cached.mc_std_error = it->second.second;
      cached.rejections = static_cast<std::size_t>(
          std::llround(cached.rejection_rate * static_cast<double>(design.num_reps)));
      results.push_back(std::move(cached));
      if (print_progress)
        std::fprintf(stderr, "[%zu/%zu] cached  %s\n", c + 1, configs.size(),
                     key.c_str());
      continue;
    }
    RejectionEstimate estimate = estimate_rejection(design, threads);
    out << rejection_csv_row(estimate) << '\n';
    out.flush();
    if (!out)
      throw std::runtime_error("run_table: write failed on sink " + csv_path);
    if (print_progress)
      std::fprintf(stderr, "[%zu/%zu] rate=%.4f se=%.4f %.1fs  %s\n", c + 1,
                   configs.size(), estimate.rejection_rate,
                   estimate.mc_std_error, estimate.wall_time_seconds,
                   key.c_str());
    completed[key] = {estimate.rejection_rate, estimate.mc_std_error};
    results.push_back(std::move(estimate));
  }
  return results;
}

}  // namespace maxboot
