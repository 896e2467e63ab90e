#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chlab {

/// Round-trippable decimal form with 17 significant digits.
std::string format_double(double v);

/// Join cells with commas; no quoting, cells never contain separators here.
std::string csv_row(const std::vector<std::string>& cells);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view s);

}  // namespace chlab
