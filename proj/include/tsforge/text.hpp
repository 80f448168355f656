#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tsforge {

/// Shortest decimal representation that parses back to the identical double.
/// Used for every numeric artifact we write, so reruns are byte-identical and
/// values survive a save/load round trip exactly.
std::string format_double(double value);

/// Strict full-string parse. Throws DataError with `context` on failure.
double parse_double(std::string_view text, const std::string& context);

long long parse_int(std::string_view text, const std::string& context);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace tsforge
