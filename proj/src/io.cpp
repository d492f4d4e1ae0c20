#include "maxboot/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "maxboot/parallel.hpp"

namespace maxboot {

std::string format_real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

double parse_real(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0') || errno == ERANGE)
    throw std::invalid_argument("not a number: '" + token + "'");
  return value;
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

bool looks_numeric(const std::string& token) {
  try {
    parse_real(token);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::vector<std::string> fields = split_fields(stripped, ',');
    if (header_allowed && !looks_numeric(trim(fields.front()))) {
      header_allowed = false;  // single optional header row
      continue;
    }
    header_allowed = false;
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& field : fields) {
      const std::string token = trim(field);
      try {
        row.push_back(parse_real(token));
      } catch (const std::exception&) {
        throw ConfigError(path + ": row " + std::to_string(line_number) +
                          ": invalid number '" + token + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ConfigError(path + ": row " + std::to_string(line_number) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(path + ": no numeric rows");
  return rows;
}

}  // namespace

SampleMatrix read_csv_matrix(const std::string& path) {
  return SampleMatrix::from_rows(read_csv_rows(path));
}

std::vector<double> read_csv_vector(const std::string& path) {
  const std::vector<std::vector<double>> rows = read_csv_rows(path);
  if (rows.size() == 1) return rows.front();
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1)
      throw ConfigError(path + ": expected a single column, row " +
                        std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " fields");
    values.push_back(rows[i].front());
  }
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("cannot rename " + tmp + " to " + path + ": " +
                  std::strerror(errno));
}

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& source, const std::string& path,
                          const std::string& message) {
  throw ConfigError(source + ": " + path + ": " + message);
}

double require_number(const json& node, const std::string& source,
                      const std::string& path) {
  if (!node.is_number()) fail_at(source, path, "expected a number");
  return node.get<double>();
}

std::size_t require_positive_integer(const json& node, const std::string& source,
                                     const std::string& path) {
  if (!node.is_number_integer() || node.get<long long>() < 1)
    fail_at(source, path, "expected a positive integer");
  return static_cast<std::size_t>(node.get<long long>());
}

const json& require_field(const json& object, const char* name,
                          const std::string& source, const std::string& path) {
  if (!object.is_object()) fail_at(source, path, "expected an object");
  auto it = object.find(name);
  if (it == object.end())
    fail_at(source, path, std::string("missing required field '") + name + "'");
  return *it;
}

BootstrapScheme parse_scheme(const json& node, const std::string& source,
                             const std::string& path) {
  BootstrapScheme scheme;
  const json& kind = require_field(node, "bootstrap", source, path);
  if (!kind.is_string()) fail_at(source, path + ".bootstrap", "expected a string");
  const std::string name = kind.get<std::string>();
  scheme.num_boot = require_positive_integer(
      require_field(node, "num_boot", source, path), source, path + ".num_boot");
  if (name == "empirical") {
    scheme.kind = BootstrapScheme::Kind::empirical;
  } else {
    scheme.kind = BootstrapScheme::Kind::multiplier;
    if (name == "gaussian") {
      scheme.family = WeightFamily::gaussian_weights();
    } else if (name == "rademacher") {
      scheme.family = WeightFamily::rademacher_weights();
    } else if (name == "mammen3") {
      double gamma = 0.2;
      if (node.contains("gamma"))
        gamma = require_number(node["gamma"], source, path + ".gamma");
      scheme.family = WeightFamily::third_order_weights(gamma);
    } else if (name == "beta") {
      double alpha = 0.5, beta = 1.5, v = 0.0;
      if (node.contains("alpha"))
        alpha = require_number(node["alpha"], source, path + ".alpha");
      if (node.contains("beta_param"))
        beta = require_number(node["beta_param"], source, path + ".beta_param");
      if (node.contains("v")) v = require_number(node["v"], source, path + ".v");
      scheme.family = WeightFamily::beta_weights(alpha, beta, v);
    } else {
      fail_at(source, path + ".bootstrap",
              "unknown scheme '" + name +
                  "' (valid: empirical, gaussian, rademacher, mammen3, beta)");
    }
  }
  if (node.contains("abs")) {
    if (!node["abs"].is_boolean()) fail_at(source, path + ".abs", "expected a boolean");
    scheme.abs_variant = node["abs"].get<bool>();
  }
  if (node.contains("centered")) {
    if (!node["centered"].is_boolean())
      fail_at(source, path + ".centered", "expected a boolean");
    scheme.centered = node["centered"].get<bool>();
  }
  try {
    if (scheme.kind == BootstrapScheme::Kind::multiplier)
      validate_weight_family(scheme.family);
  } catch (const std::exception& err) {
    fail_at(source, path, err.what());
  }
  return scheme;
}

}  // namespace

std::vector<DesignSpec> parse_design_configs(const std::string& json_text,
                                             const std::string& source,
                                             const std::uint64_t* fallback_seed) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(source + ": invalid JSON: " + err.what());
  }
  if (!root.is_object()) fail_at(source, "$", "expected a JSON object");
  const json& version = require_field(root, "schema_version", source, "$");
  if (!version.is_number_integer() || version.get<int>() != 1)
    fail_at(source, "$.schema_version", "unsupported schema_version (expected 1)");

  std::uint64_t default_seed = 0;
  bool have_default_seed = false;
  if (root.contains("base_seed")) {
    if (!root["base_seed"].is_number_unsigned() &&
        !root["base_seed"].is_number_integer())
      fail_at(source, "$.base_seed", "expected an integer");
    default_seed = root["base_seed"].get<std::uint64_t>();
    have_default_seed = true;
  } else if (fallback_seed != nullptr) {
    default_seed = *fallback_seed;
    have_default_seed = true;
  }

  const json& designs = require_field(root, "designs", source, "$");
  if (!designs.is_array() || designs.empty())
    fail_at(source, "$.designs", "expected a non-empty array");

  std::vector<DesignSpec> specs;
  specs.reserve(designs.size());
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const std::string path = "$.designs[" + std::to_string(i) + "]";
    const json& node = designs[i];
    if (!node.is_object()) fail_at(source, path, "expected an object");
    DesignSpec spec;

    const json& sym = require_field(node, "symmetric", source, path);
    if (!sym.is_boolean()) fail_at(source, path + ".symmetric", "expected a boolean");
    spec.symmetric = sym.get<bool>();

    spec.n = require_positive_integer(require_field(node, "n", source, path),
                                      source, path + ".n");
    spec.p = require_positive_integer(require_field(node, "p", source, path),
                                      source, path + ".p");
    spec.rho = require_number(require_field(node, "rho", source, path), source,
                              path + ".rho");
    if (!(spec.rho >= 0.0 && spec.rho < 1.0))
      fail_at(source, path + ".rho", "expected a number in [0,1)");

    const json& marginal = require_field(node, "marginal", source, path);
    const json& family =
        require_field(marginal, "family", source, path + ".marginal");
    if (!family.is_string())
      fail_at(source, path + ".marginal.family", "expected a string");
    const std::string family_name = family.get<std::string>();
    const double shape =
        require_number(require_field(marginal, "shape", source, path + ".marginal"),
                       source, path + ".marginal.shape");
    if (family_name == "weibull") {
      spec.marginal = MarginalSpec::weibull(shape);
    } else if (family_name == "gamma") {
      spec.marginal = MarginalSpec::gamma(shape);
    } else {
      fail_at(source, path + ".marginal.family",
              "unknown family '" + family_name + "' (valid: weibull, gamma)");
    }
    if (!(shape > 0.0))
      fail_at(source, path + ".marginal.shape", "expected a positive number");

    spec.alpha = require_number(require_field(node, "alpha", source, path),
                                source, path + ".alpha");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
      fail_at(source, path + ".alpha", "expected a number in (0,1)");

    spec.scheme = parse_scheme(require_field(node, "scheme", source, path),
                               source, path + ".scheme");
    spec.num_reps =
        require_positive_integer(require_field(node, "num_reps", source, path),
                                 source, path + ".num_reps");

    if (node.contains("base_seed")) {
      if (!node["base_seed"].is_number_unsigned() &&
          !node["base_seed"].is_number_integer())
        fail_at(source, path + ".base_seed", "expected an integer");
      spec.base_seed.seed = node["base_seed"].get<std::uint64_t>();
    } else if (have_default_seed) {
      spec.base_seed.seed = default_seed;
    } else {
      fail_at(source, path,
              "missing 'base_seed' (per design or at the top level)");
    }
    spec.base_seed.stream = 0;
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace maxboot
