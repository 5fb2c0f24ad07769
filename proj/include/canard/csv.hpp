#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace canard::csv {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string number(double v);

/// Splits one CSV line on commas (no quoting; all our files are numeric).
std::vector<std::string_view> split(std::string_view line);

/// Parses a double with std::from_chars; throws UsageError on garbage.
double parse_number(std::string_view field);

}  // namespace canard::csv
