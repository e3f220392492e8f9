#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orlicz_kit/ext_real.hpp"

namespace okit {

/// Parse a decimal literal; "inf" (any case) is accepted.  Throws
/// InputError on anything else.
real parse_real(const std::string& s);

/// Two-column numeric CSV (x, y).  A non-numeric first line is treated as a
/// header; blank lines and lines starting with '#' are skipped.
std::pair<std::vector<real>, std::vector<real>> read_two_column_csv(const std::string& path);

/// Shortest round-trip text for a value ("inf" for infinity).
std::string format_real(real x);

} // namespace okit
