#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace paddy::text {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Whole-field decimal parse; Parse error naming `context` on failure.
double parse_double(std::string_view field, std::string_view context);
long long parse_int(std::string_view field, std::string_view context);

/// Splits on commas; no quoting. Trailing '\r' is dropped.
std::vector<std::string_view> split_csv(std::string_view line);

std::string_view trim(std::string_view s);

}  // namespace paddy::text
