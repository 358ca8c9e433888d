#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace caustics::csv {

/// Shortest-stable text for a double: 17 significant digits, `%.17g`.
std::string format(double value);

/// Writes one LF-terminated row of comma-separated values.
void write_row(std::ostream& out, std::initializer_list<double> values);
void write_header(std::ostream& out, std::string_view header);

/// Reads a numeric CSV whose first line must equal `header`.
std::vector<std::vector<double>> read(std::istream& in, std::string_view header);

}  // namespace caustics::csv
