#pragma once

// Brute-force checks that do not use the closed-form caustic formulas:
// explicit ray families, reflection off a polyline, envelopes from
// intersections of neighbouring rays, and mirror feasibility tests.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "caustics/caustic.hpp"
#include "caustics/geometry.hpp"
#include "caustics/inclination.hpp"

namespace caustics {

struct Ray {
  PlanePoint base;
  Vec2 direction;  // unit
};

struct RayFamily {
  std::vector<Ray> rays;
  std::vector<double> source_thetas;

  /// Throws ErrorCode::shape on length mismatch and ErrorCode::geometry for
  /// a non-unit direction or non-increasing thetas.
  void validate() const;
};

/// Bases on the reconstructed curve, directions nu(theta) from the coframe.
RayFamily rays_from_tilt(const InclinationCurve& curve, const TiltField& tilt,
                         const AngleInterval& interval, const ReconstructOptions& options = {});

/// Horizontal rays travelling in +x, reflected at each vertex of the
/// polyline about the normal of the local tangent (central difference,
/// one-sided at the ends). `thetas` labels the vertices; when empty they
/// are numbered 0, 1, 2, ...
RayFamily reflect_horizontal(std::span<const PlanePoint> mirror, std::span<const double> thetas = {});

/// |d_i x d_{i+1}| below this marks a parallel pair.
inline constexpr double kParallelTol = 1e-12;

struct Envelope {
  std::vector<PlanePoint> points;   // intersections of non-parallel pairs, in order
  std::vector<double> thetas;       // midpoints of the source angles of each pair
  std::vector<std::size_t> gaps;    // pair indices i flagged as parallel
};

/// Point i is the intersection of rays i and i+1.
Envelope envelope_numeric(const RayFamily& family);

/// Symmetric Hausdorff distance between two polylines, measuring vertices
/// of each against the segments of the other. Vertices within
/// `exclusion_radius` of any point in `exclusions` are skipped.
double hausdorff(std::span<const PlanePoint> a, std::span<const PlanePoint> b,
                 std::span<const PlanePoint> exclusions = {}, double exclusion_radius = 0.0);

struct VerticalityResult {
  bool vertical = false;
  std::optional<std::size_t> first_violation;  // vertex where monotonicity breaks
};

/// y strictly monotone along the polyline.
VerticalityResult verticality_check(std::span<const PlanePoint> polyline);

struct OcclusionResult {
  bool any_blocked = false;
  double blocked_fraction = 0.0;
  std::vector<std::size_t> blocked;  // vertex indices
};

/// A vertex is blocked when the ray y = const coming from x = -inf crosses
/// a non-adjacent segment strictly before reaching it.
OcclusionResult occlusion_check(std::span<const PlanePoint> polyline);

std::vector<PlanePoint> positions_of(std::span<const FrameSample> samples);

}  // namespace caustics
