#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vti::csv {

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

// Strict parse of a full field; throws std::runtime_error with `context`
// on garbage, empty input, or trailing characters.
double parse_double(std::string_view field, const std::string& context);
long parse_long(std::string_view field, const std::string& context);

// Splits one line on `delim`. No quoting: fields in this project never
// contain the delimiter.
std::vector<std::string> split(std::string_view line, char delim = ',');

std::string join(const std::vector<std::string>& fields, char delim = ',');

} // namespace vti::csv
