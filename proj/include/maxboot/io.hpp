#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "maxboot/format.hpp"
#include "maxboot/simulation.hpp"
#include "maxboot/types.hpp"

namespace maxboot {

/// Raised for malformed input files / configs; the CLI maps it to the
/// usage/config exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised for filesystem problems; the CLI maps it to the I/O exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a numeric CSV into an n x p matrix. Rows are observations.
/// A single leading header row is skipped if its first field is not a
/// number. Ragged rows are reported with their 1-based row number.
SampleMatrix read_csv_matrix(const std::string& path);

/// Reads a CSV of one value per row (or one row of values) into a vector.
std::vector<double> read_csv_vector(const std::string& path);

/// Parses a simulate config (JSON text) into design specs. `source` names
/// the file for error messages; errors carry the JSON path of the
/// offending field. Designs without their own base_seed fall back to the
/// top-level base_seed, then to fallback_seed if given. See
/// configs/schema.json for the format.
std::vector<DesignSpec> parse_design_configs(const std::string& json_text,
                                             const std::string& source,
                                             const std::uint64_t* fallback_seed = nullptr);

/// Reads a whole file into memory.
std::string read_file(const std::string& path);

/// Writes content atomically (temp file + rename) so failed runs leave no
/// partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace maxboot
