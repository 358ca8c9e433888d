#pragma once

// Self-check suites behind `caustics verify`. Each check reports a metric
// against a fixed tolerance.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace caustics::verify {

struct Check {
  std::string suite;
  std::string name;
  double metric = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Names accepted by run_suite, in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Throws ErrorCode::validation for an unknown suite name.
std::vector<Check> run_suite(std::string_view name, std::uint64_t seed);

}  // namespace caustics::verify
