#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caustics {

enum class ErrorCode {
  domain,               // argument outside the declared domain, pole inside interval
  evaluation,           // non-finite function value
  degenerate_sampling,  // too few samples or repeated arclength
  flat_caustic,         // phi' == 1
  cusp,                 // R == 0 where a finite curvature is required
  caustic_at_infinity,  // chi == 0
  degenerate_curve,     // identically zero radius and similar
  branch_unavailable,   // requested real Lambert branch does not exist
  pole,                 // Lambert W pole at z = 0 on k != 0
  numeric,              // iteration failed to converge
  resonance,            // vanishing recursion denominator
  depth,                // continuation needs a longer jet
  shape,                // mismatched list lengths
  geometry,             // degenerate polyline segment
  validation,           // bad user input (CLI)
  io,                   // missing or unreadable file
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace caustics
