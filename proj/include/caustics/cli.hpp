#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "caustics/geometry.hpp"
#include "caustics/inclination.hpp"

namespace caustics::cli {

struct OutputSpec {
  std::string format;  // csv or svg
  std::string path;
};

struct JobSpec {
  std::string subcommand;  // curve, caustic, skew, pantograph, verify
  std::map<std::string, std::string> params;
  std::vector<OutputSpec> outputs;
};

enum ExitCode : int { ok = 0, validation_error = 2, numeric_error = 3 };

/// Runs one job. CSV goes to the --out-csv file, or to `out` when none is
/// given; text (echoes, reports, tables) goes to `out` when CSV is written
/// to a file and to `err` otherwise, so stdout stays machine-readable.
int run(const JobSpec& spec, std::ostream& out, std::ostream& err);

/// Parses argv into a JobSpec (CLI11) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Angle literal: sums of terms like `2`, `0.5`, `pi`, `2pi`, `3*pi/2`,
/// `-pi/4`, `pi-0.2`. Throws ErrorCode::validation.
double parse_angle(std::string_view text);

/// `lo:hi` with angle literals on both sides.
AngleInterval parse_interval(std::string_view text, std::size_t samples);

struct NamedCurve {
  InclinationCurve curve;
  std::function<PlanePoint(double)> anchor;  // position of the first sample
};

/// circle, cycloid, log_spiral:A,b, parabola:A, puiseux:c,gamma,
/// series:c0,c1,... Throws ErrorCode::validation for unknown names.
NamedCurve curve_from_name(std::string_view name);

/// key=value lines; blank lines and lines starting with # are skipped.
std::map<std::string, std::string> read_key_values(std::istream& in);

}  // namespace caustics::cli
