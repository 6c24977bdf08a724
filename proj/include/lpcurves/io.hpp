#pragma once

#include <string>
#include <string_view>

namespace lpcurves {

/// Shortest decimal that round-trips to the same double ("inf", "-inf", "nan" otherwise).
std::string format_double(double v);
/// Strict parse of a whole field; throws ParseError.
double parse_double(std::string_view s);

}  // namespace lpcurves
