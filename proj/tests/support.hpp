#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "caustics/error.hpp"
#include "caustics/geometry.hpp"

namespace test {

inline constexpr double kPi = 3.14159265358979323846;

/// Code of the caustics::Error thrown by f, empty when nothing is thrown.
template <class F>
std::optional<caustics::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const caustics::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace test
