#include "caustics/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caustics/csv.hpp"
#include "caustics/error.hpp"
#include "caustics/kernels.hpp"

namespace caustics {

void RayFamily::validate() const {
  if (rays.size() != source_thetas.size()) {
    fail(ErrorCode::shape, "ray family has " + std::to_string(rays.size()) + " rays and " +
                               std::to_string(source_thetas.size()) + " angles");
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (std::fabs(norm(rays[i].direction) - 1.0) > 1e-12) {
      fail(ErrorCode::geometry, "ray " + std::to_string(i) + " does not have a unit direction");
    }
    if (i > 0 && !(source_thetas[i] > source_thetas[i - 1])) {
      fail(ErrorCode::geometry, "ray angles must increase strictly (index " + std::to_string(i) + ")");
    }
  }
}

RayFamily rays_from_tilt(const InclinationCurve& curve, const TiltField& tilt, const AngleInterval& interval,
                         const ReconstructOptions& options) {
  const std::vector<FrameSample> samples = reconstruct(curve, interval, options);
  RayFamily fam;
  fam.rays.reserve(samples.size());
  fam.source_thetas.reserve(samples.size());
  for (const auto& s : samples) {
    const CoframeState st = coframe_at(curve, tilt, s.theta);
    fam.rays.push_back({s.position, rotate(st.nu, options.frame_rotation)});
    fam.source_thetas.push_back(s.theta);
  }
  return fam;
}

RayFamily reflect_horizontal(std::span<const PlanePoint> mirror, std::span<const double> thetas) {
  const std::size_t n = mirror.size();
  if (n < 2) fail(ErrorCode::geometry, "a mirror polyline needs at least two points");
  if (!thetas.empty() && thetas.size() != n) fail(ErrorCode::shape, "one angle per mirror vertex expected");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (mirror[i + 1] == mirror[i]) {
      fail(ErrorCode::geometry, "degenerate mirror segment at vertex " + std::to_string(i));
    }
  }
  const Vec2 incoming{1.0, 0.0};
  RayFamily fam;
  fam.rays.reserve(n);
  fam.source_thetas.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    const Vec2 chord = mirror[hi] - mirror[lo];
    const Vec2 normal = perp(chord / norm(chord));
    Vec2 d = incoming - (2.0 * dot(incoming, normal)) * normal;
    d = d / norm(d);
    fam.rays.push_back({mirror[i], d});
    fam.source_thetas.push_back(thetas.empty() ? static_cast<double>(i) : thetas[i]);
  }
  return fam;
}

Envelope envelope_numeric(const RayFamily& family) {
  family.validate();
  const std::size_t n = family.rays.size();
  if (n < 3) fail(ErrorCode::degenerate_sampling, "envelope needs at least three rays");
  std::vector<double> bx(n), by(n), dx(n), dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    bx[i] = family.rays[i].base.x;
    by[i] = family.rays[i].base.y;
    dx[i] = family.rays[i].direction.x;
    dy[i] = family.rays[i].direction.y;
  }
  std::vector<double> ox(n - 1), oy(n - 1);
  std::vector<std::uint8_t> par(n - 1);
  kernels::intersect_consecutive({bx, by, dx, dy}, kParallelTol, ox, oy, par);
  Envelope env;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (par[i]) {
      env.gaps.push_back(i);
      continue;
    }
    env.points.push_back({ox[i], oy[i]});
    env.thetas.push_back(0.5 * (family.source_thetas[i] + family.source_thetas[i + 1]));
  }
  return env;
}

namespace {

double directed_sq(std::span<const PlanePoint> from, std::span<const PlanePoint> to,
                   std::span<const PlanePoint> exclusions, double radius) {
  std::vector<double> qx, qy;
  for (const auto& p : from) {
    bool skip = false;
    for (const auto& e : exclusions) skip = skip || distance(p, e) < radius;
    if (skip) continue;
    qx.push_back(p.x);
    qy.push_back(p.y);
  }
  if (qx.empty()) return 0.0;
  const std::size_t m = to.size() == 1 ? 1 : to.size() - 1;
  std::vector<double> ax(m), ay(m), bx(m), by(m);
  for (std::size_t j = 0; j < m; ++j) {
    const PlanePoint& a = to[j];
    const PlanePoint& b = to.size() == 1 ? to[0] : to[j + 1];
    ax[j] = a.x;
    ay[j] = a.y;
    bx[j] = b.x;
    by[j] = b.y;
  }
  std::vector<double> d(qx.size());
  kernels::min_sq_dist_to_segments(qx, qy, ax, ay, bx, by, d);
  return *std::max_element(d.begin(), d.end());
}

}  // namespace

double hausdorff(std::span<const PlanePoint> a, std::span<const PlanePoint> b,
                 std::span<const PlanePoint> exclusions, double exclusion_radius) {
  if (a.empty() || b.empty()) fail(ErrorCode::geometry, "Hausdorff distance of an empty polyline");
  const double ab = directed_sq(a, b, exclusions, exclusion_radius);
  const double ba = directed_sq(b, a, exclusions, exclusion_radius);
  return std::sqrt(std::max(ab, ba));
}

VerticalityResult verticality_check(std::span<const PlanePoint> polyline) {
  VerticalityResult out;
  out.vertical = true;
  if (polyline.size() < 2) return out;
  int sign = 0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const double dy = polyline[i + 1].y - polyline[i].y;
    const int s = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
    if (sign == 0 && i == 0) sign = s;
    if (s == 0 || s != sign) {
      out.vertical = false;
      out.first_violation = i + 1;
      return out;
    }
  }
  return out;
}

OcclusionResult occlusion_check(std::span<const PlanePoint> polyline) {
  OcclusionResult out;
  const std::size_t n = polyline.size();
  if (n == 0) return out;
  double scale = 0.0;
  for (const auto& p : polyline) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  const double eps = 1e-12 * std::max(1.0, scale);
  for (std::size_t j = 0; j < n; ++j) {
    const PlanePoint v = polyline[j];
    bool hit = false;
    for (std::size_t i = 0; i + 1 < n && !hit; ++i) {
      if (i == j || i + 1 == j) continue;
      const PlanePoint a = polyline[i];
      const PlanePoint b = polyline[i + 1];
      if (v.y < std::min(a.y, b.y) || v.y > std::max(a.y, b.y)) continue;
      double x;
      if (a.y == b.y) {
        x = std::min(a.x, b.x);
      } else {
        x = a.x + (v.y - a.y) * (b.x - a.x) / (b.y - a.y);
      }
      hit = x < v.x - eps;
    }
    if (hit) out.blocked.push_back(j);
  }
  out.any_blocked = !out.blocked.empty();
  out.blocked_fraction = static_cast<double>(out.blocked.size()) / static_cast<double>(n);
  return out;
}

std::vector<PlanePoint> positions_of(std::span<const FrameSample> samples) {
  std::vector<PlanePoint> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.position);
  return out;
}

}  // namespace caustics
