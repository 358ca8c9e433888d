#include <doctest.h>

#include <cmath>
#include <vector>

#include "caustics/oracle.hpp"
#include "support.hpp"

using namespace caustics;
using test::kPi;

namespace {

// Mirror with tangent angle t: r(t) = (sin t, -cos t), a unit circle.
std::vector<PlanePoint> circle_by_tangent(double lo, double hi, int n, std::vector<double>& thetas) {
  std::vector<PlanePoint> pts;
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    thetas.push_back(t);
    pts.push_back({std::sin(t), -std::cos(t)});
  }
  return pts;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("flat vertical mirror sends rays back") {
  std::vector<PlanePoint> m;
  for (int i = 0; i < 10; ++i) m.push_back({0.0, 0.1 * i});
  const RayFamily f = reflect_horizontal(m);
  REQUIRE(f.rays.size() == 10);
  for (const auto& r : f.rays) {
    CHECK(std::fabs(r.direction.x + 1.0) < 1e-15);
    CHECK(std::fabs(r.direction.y) < 1e-15);
  }
  CHECK(f.source_thetas[3] == 3.0);
  const Envelope e = envelope_numeric(f);
  CHECK(e.points.empty());
  CHECK(e.gaps.size() == 9);
}

TEST_CASE("45 degree mirror sends rays up") {
  std::vector<PlanePoint> m;
  for (int i = 0; i < 5; ++i) m.push_back({0.2 * i, 0.2 * i});
  for (const auto& r : reflect_horizontal(m).rays) {
    CHECK(std::fabs(r.direction.x) < 1e-15);
    CHECK(std::fabs(r.direction.y - 1.0) < 1e-15);
  }
}

TEST_CASE("reflected directions follow the tangent angle") {
  std::vector<double> th;
  const auto m = circle_by_tangent(-1.2, 1.2, 4001, th);
  const RayFamily f = reflect_horizontal(m, th);
  f.validate();
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    const double t = th[i];
    CHECK(distance(f.rays[i].direction, {std::cos(2 * t), std::sin(2 * t)}) < 1e-6);
  }
}

TEST_CASE("circle normals meet at the centre") {
  const RayFamily f = rays_from_tilt(circle_curve(2.0), TiltField::evolute(), {0.0, 2 * kPi, 200});
  const Envelope e = envelope_numeric(f);
  REQUIRE(e.points.size() == 199);
  PlanePoint centre = e.points.front();
  for (const auto& p : e.points) CHECK(distance(p, centre) < 1e-10);
  CHECK(e.thetas[0] == doctest::Approx(0.5 * (f.source_thetas[0] + f.source_thetas[1])));
}

TEST_CASE("skew rays keep a constant angle to the tangent") {
  const double phi = 0.4;
  const InclinationCurve c = log_spiral_curve(1.0, 0.3);
  const AngleInterval iv{0.0, 3.0, 50};
  const RayFamily f = rays_from_tilt(c, TiltField::skew(phi), iv);
  const auto frames = reconstruct(c, iv);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(std::fabs(dot(f.rays[i].direction, frames[i].tangent) - std::sin(phi)) < 1e-14);
    CHECK(std::fabs(dot(f.rays[i].direction, frames[i].normal) - std::cos(phi)) < 1e-14);
    CHECK(distance(f.rays[i].base, frames[i].position) < 1e-14);
  }
}

TEST_CASE("ray family validation") {
  RayFamily f;
  f.rays = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 0}}};
  f.source_thetas = {0.0};
  CHECK(test::error_of([&] { f.validate(); }) == ErrorCode::shape);
  f.source_thetas = {0.0, 0.0};
  CHECK(test::error_of([&] { f.validate(); }) == ErrorCode::geometry);
  f.source_thetas = {0.0, 1.0};
  f.rays[1].direction = {2.0, 0.0};
  CHECK(test::error_of([&] { f.validate(); }) == ErrorCode::geometry);
}

TEST_CASE("verticality") {
  std::vector<PlanePoint> half, full;
  for (int i = 0; i <= 200; ++i) {
    const double t = -kPi / 2 + kPi * (i + 0.5) / 201.5;
    half.push_back({std::cos(t), std::sin(t)});
  }
  for (int i = 0; i <= 400; ++i) {
    const double t = 2 * kPi * i / 400.0;
    full.push_back({std::cos(t), std::sin(t)});
  }
  CHECK(verticality_check(half).vertical);
  const auto v = verticality_check(full);
  CHECK_FALSE(v.vertical);
  REQUIRE(v.first_violation.has_value());
}

TEST_CASE("occlusion") {
  std::vector<PlanePoint> full, flat;
  for (int i = 0; i < 400; ++i) {
    const double t = 2 * kPi * i / 400.0;
    full.push_back({std::cos(t), std::sin(t)});
  }
  for (int i = 0; i < 50; ++i) flat.push_back({0.0, 0.02 * i});
  const OcclusionResult o = occlusion_check(full);
  CHECK(o.any_blocked);
  CHECK(o.blocked_fraction == doctest::Approx(0.5).epsilon(0.02));
  for (std::size_t i : o.blocked) CHECK(full[i].x > 0.0);
  const OcclusionResult z = occlusion_check(flat);
  CHECK_FALSE(z.any_blocked);
  CHECK(z.blocked_fraction == 0.0);
}

TEST_CASE("hausdorff") {
  const std::vector<PlanePoint> a{{0, 0}, {1, 0}, {2, 0}};
  const std::vector<PlanePoint> b{{0, 0.5}, {2, 0.5}};
  const std::vector<PlanePoint> c{{0, 0}, {2, 0}, {2, 3}};
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(hausdorff(a, b) == doctest::Approx(0.5));
  CHECK(hausdorff(a, c) == doctest::Approx(3.0));
  const std::vector<PlanePoint> ex{{2, 3}};
  CHECK(hausdorff(a, c, ex, 0.1) == doctest::Approx(0.0));
  CHECK(test::error_of([&] { hausdorff(a, std::vector<PlanePoint>{}); }).has_value());
}

}  // TEST_SUITE
