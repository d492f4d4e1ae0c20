#pragma once

#include <string>

namespace maxboot {

/// Formats a double with up to 17 significant digits ("%.17g"): enough to
/// round-trip exactly, '.' decimal point, no separators, byte-stable for a
/// given value on every platform with IEEE doubles.
std::string format_real(double x);

/// Strict double parse; throws std::invalid_argument naming the token.
double parse_real(const std::string& token);

}  // namespace maxboot
