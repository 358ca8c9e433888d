#include "caustics/error.hpp"

namespace caustics {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::evaluation: return "evaluation";
    case ErrorCode::degenerate_sampling: return "degenerate-sampling";
    case ErrorCode::flat_caustic: return "flat-caustic";
    case ErrorCode::cusp: return "cusp";
    case ErrorCode::caustic_at_infinity: return "caustic-at-infinity";
    case ErrorCode::degenerate_curve: return "degenerate-curve";
    case ErrorCode::branch_unavailable: return "branch-unavailable";
    case ErrorCode::pole: return "pole";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::resonance: return "resonance";
    case ErrorCode::depth: return "depth";
    case ErrorCode::shape: return "shape";
    case ErrorCode::geometry: return "geometry";
    case ErrorCode::validation: return "validation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace caustics
