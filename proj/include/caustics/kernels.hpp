#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and
// an AVX2 version compiled with a function-level target attribute; the
// dispatcher picks AVX2 when the running CPU reports it. Both variants use
// the same operation order (no FMA contraction), so results match bit for
// bit and the equivalence tests compare exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace caustics::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Whether the AVX2 variants are compiled in and supported by this CPU.
bool avx2_available();

/// ISA the dispatcher currently routes to.
Isa active_isa();

/// Overrides dispatch (tests, benchmarks). Requesting avx2 on a CPU without
/// it falls back to scalar; returns the ISA actually selected.
Isa force_isa(Isa isa);

/// Structure-of-arrays view of a ray family: base points and unit directions.
struct RaysSoA {
  std::span<const double> base_x, base_y, dir_x, dir_y;
  std::size_t size() const { return base_x.size(); }
};

/// Intersections of consecutive lines i and i+1, for i in [0, n-1).
/// parallel[i] = 1 when |d_i x d_{i+1}| < parallel_tol; the point is then NaN.
void intersect_consecutive(const RaysSoA& rays, double parallel_tol, std::span<double> out_x,
                           std::span<double> out_y, std::span<std::uint8_t> parallel);

/// For every query point, the squared distance to the nearest segment
/// [a_j, b_j]. Degenerate segments act as points.
void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                             std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::span<double> out);

/// Polynomial sum_j coeffs[j] x^j at many points (Horner).
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);

namespace scalar {
void intersect_consecutive(const RaysSoA& rays, double parallel_tol, std::span<double> out_x,
                           std::span<double> out_y, std::span<std::uint8_t> parallel);
void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                             std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::span<double> out);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void intersect_consecutive(const RaysSoA& rays, double parallel_tol, std::span<double> out_x,
                           std::span<double> out_y, std::span<std::uint8_t> parallel);
void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                             std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::span<double> out);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
}  // namespace avx2

}  // namespace caustics::kernels
