#include "caustics/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "caustics/error.hpp"

namespace caustics::csv {

std::string format(double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format(v);
    first = false;
  }
  out << '\n';
}

void write_header(std::ostream& out, std::string_view header) { out << header << '\n'; }

std::vector<std::vector<double>> read(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::io, "empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    fail(ErrorCode::validation, "unexpected CSV header '" + line + "', want '" +
                                    std::string(header) + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      double v = 0.0;
      const char* first = line.data() + start;
      const char* last = line.data() + end;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        fail(ErrorCode::validation, "bad number on CSV line " + std::to_string(line_no));
      }
      row.push_back(v);
      start = end + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace caustics::csv
