#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "caustics/caustic.hpp"
#include "support.hpp"

using namespace caustics;
using test::kPi;

TEST_SUITE("caustic") {

TEST_CASE("tilt field kinds") {
  const TiltField e = TiltField::evolute();
  const TiltField s = TiltField::skew(0.3);
  const TiltField r = TiltField::reflection();
  for (double t : {-1.0, 0.0, 2.5}) {
    CHECK(e.phi(t) == 0.0);
    CHECK(s.phi(t) == 0.3);
    CHECK(s.phi1(t) == 0.0);
    CHECK(s.phi2(t) == 0.0);
    CHECK(r.phi(t) == doctest::Approx(kPi / 2 - t));
    CHECK(r.phi1(t) == -1.0);
    CHECK(r.phi2(t) == 0.0);
  }
  CHECK(SimilaritySpec::from_alpha(2.0, 0.25, 1).alpha() == doctest::Approx(0.25));
}

TEST_CASE("coframe examples") {
  const InclinationCurve circle = circle_curve(2.0);
  const CoframeState e = coframe_at(circle, TiltField::evolute(), 0.7);
  CHECK(distance(e.tau, unit_at(0.7)) < 1e-15);
  CHECK(distance(e.nu, perp(unit_at(0.7))) < 1e-15);
  CHECK(e.chi == doctest::Approx(0.5));

  for (double t : {0.1, 1.0, 2.0}) {
    const CoframeState r = coframe_at(circle, TiltField::reflection(), t);
    CHECK(distance(r.nu, {std::cos(2 * t), std::sin(2 * t)}) < 1e-14);
    CHECK(std::fabs(dot(r.tau, r.nu)) < 1e-12);
    CHECK(r.chi == doctest::Approx(2.0 / 2.0));
  }

  const CoframeState q = coframe_at(circle_curve(1.0), TiltField::skew(kPi / 2), 0.4);
  CHECK(q.chi == doctest::Approx(1.0));
  CHECK(distance(q.tau, -perp(unit_at(0.4))) < 1e-15);
  CHECK(distance(q.nu, unit_at(0.4)) < 1e-15);
}

TEST_CASE("coframe errors") {
  const TiltField flat = TiltField::custom([](double t) { return t; }, [](double) { return 1.0; },
                                           [](double) { return 0.0; });
  CHECK(test::error_of([&] { coframe_at(circle_curve(1.0), flat, 0.2); }) == ErrorCode::flat_caustic);
  CHECK(test::error_of([&] { coframe_at(cycloid_curve(1.0), TiltField::evolute(), 0.0); }) == ErrorCode::cusp);
  CHECK(test::error_of([] { caustic_radius(1.0, 0.0, 0.0, 1.0, 0.0); }) == ErrorCode::flat_caustic);
}

TEST_CASE("caustic radius examples") {
  CHECK(caustic_radius(2.0, 0.7, 0.0, 0.0, 0.0) == 0.7);
  for (double t = 0.0; t <= kPi; t += 0.1) {
    CHECK(std::fabs(caustic_radius(1.0, 0.0, kPi / 2 - t, -1.0, 0.0) - 0.75 * std::cos(t)) < 1e-15);
  }
}

TEST_CASE("reflection specialization equals the general formula") {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = test::uniform(rng, -4.0, 4.0);
    const double R = test::uniform(rng, -3.0, 3.0);
    const double Rp = test::uniform(rng, -3.0, 3.0);
    const double general = caustic_radius(R, Rp, kPi / 2 - t, -1.0, 0.0);
    worst = std::max(worst, std::fabs(general - reflection_caustic_radius(t, R, Rp)));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("evolute of a circle is its center") {
  const CausticCurve cc = caustic_curve(circle_curve(1.0), TiltField::evolute(), {0.0, 2 * kPi, 200});
  REQUIRE(cc.failures() == 0);
  for (const auto& c : cc.samples()) {
    CHECK(distance(c.position, {0.0, 1.0}) < 1e-9);
    CHECK(c.caustic_radius == 0.0);
  }
}

TEST_CASE("reflection points and ray lengths") {
  const InclinationCurve circle = circle_curve(1.0);
  for (const auto& f : reconstruct(circle, {0.1, kPi - 0.1, 50})) {
    const CausticSample c = caustic_point(circle, f, TiltField::reflection());
    CHECK(c.ray_length == doctest::Approx(0.5 * std::fabs(std::sin(f.theta))));
    const PlanePoint eq = f.position + 0.5 * std::sin(f.theta) * unit_at(2 * f.theta);
    CHECK(distance(c.position, eq) < 1e-14);
    CHECK(std::fabs(c.caustic_theta - 2 * f.theta) < 1e-15);
  }
  const InclinationCurve cyc = cycloid_curve(1.0);
  const auto f = reconstruct(cyc, {0.0, kPi / 2, 3}).back();
  const CausticSample c = caustic_point(cyc, f, TiltField::reflection());
  CHECK(distance(c.position - f.position, {-0.5, 0.0}) < 1e-15);
}

TEST_CASE("nephroid inclination form") {
  const CausticCurve cc = caustic_curve(circle_curve(1.0), TiltField::reflection(), {0.0, kPi, 1000});
  REQUIRE(cc.failures() == 0);
  for (const auto& c : cc.samples()) {
    CHECK(std::fabs(c.caustic_theta - 2 * c.source_theta) < 1e-15);
    CHECK(std::fabs(c.caustic_radius - 0.75 * std::cos(c.caustic_theta / 2)) < 1e-12);
  }
}

TEST_CASE("evolute of a cycloid is a congruent cycloid") {
  const InclinationCurve cyc = cycloid_curve(1.0);
  const AngleInterval grid{0.3, 2.8, 200};
  const CausticCurve cc = caustic_curve(cyc, TiltField::evolute(), grid);
  const auto ev = cc.samples();
  std::vector<double> shifted;
  for (const auto& c : ev) {
    CHECK(std::fabs(c.caustic_radius - std::cos(c.source_theta)) < 1e-8);
    shifted.push_back(c.caustic_theta);
  }
  const auto ref = positions_at(cyc, shifted);
  double worst = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const Vec2 a = ev[i].position - ev[0].position;
    const Vec2 b = ref[i] - ref[0];
    worst = std::max(worst, distance(a, b));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("conormal rays are tangent to the caustic") {
  const InclinationCurve c = log_spiral_curve(1.0, 0.3);
  const TiltField tilt = TiltField::skew(0.4);
  const CausticCurve cc = caustic_curve(c, tilt, {0.0, 2.0, 2001});
  const auto s = cc.samples();
  REQUIRE(s.size() == 2001);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const Vec2 d = s[i + 1].position - s[i - 1].position;
    const Vec2 nu = coframe_at(c, tilt, s[i].source_theta).nu;
    worst = std::max(worst, std::asin(std::min(1.0, std::fabs(cross(d / norm(d), nu)))));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("evolute arclength equals the change of R") {
  const InclinationCurve c = log_spiral_curve(1.0, 0.5);
  const AngleInterval grid{0.0, 2.0, 4001};
  const auto s = caustic_curve(c, TiltField::evolute(), grid).samples();
  double len = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) len += distance(s[i].position, s[i - 1].position);
  CHECK(std::fabs(len - (std::exp(1.0) - 1.0)) < 1e-6);
}

TEST_CASE("reflection cusp correspondence on the cycloidal mirror") {
  const InclinationCurve cyc = cycloid_curve(1.0);
  const auto mirror = reconstruct(cyc, {0.0, kPi, 3});
  for (const auto& f : mirror) {
    const PlanePoint c = f.position + 0.5 * f.radius * std::sin(f.theta) * unit_at(2 * f.theta);
    if (f.radius == 0.0 || std::fabs(std::sin(f.theta)) < 1e-15) {
      CHECK(distance(c, f.position) < 1e-15);
    } else {
      CHECK(std::fabs(c.y - f.position.y) < 1e-15);
      CHECK(std::fabs(std::fabs(c.x - f.position.x) - 0.5 * std::fabs(f.radius)) < 1e-15);
    }
  }
}

TEST_CASE("failed nodes are flagged with their index") {
  const CausticCurve cc = caustic_curve(cycloid_curve(1.0), TiltField::reflection(), {0.0, kPi, 11});
  REQUIRE(cc.nodes.size() == 11);
  // sin(pi) rounds to 1.2e-16, so only theta = 0 is an exact cusp.
  CHECK(cc.failures() == 1);
  CHECK_FALSE(cc.nodes.front().ok());
  CHECK(cc.nodes.front().error == ErrorCode::cusp);
  CHECK(cc.nodes.front().message.find("node 0") != std::string::npos);
  CHECK(cc.samples().size() == 10);
  CHECK(cc.samples().front().source_theta == cc.nodes[1].source_theta);
}

TEST_CASE("similarity residual examples") {
  const AngleInterval grid{0.1, 2.0, 300};
  CHECK(similarity_residual(log_spiral_curve(1.0, 1.0), TiltField::evolute(), {1.0, kPi / 2, 1}, grid) < 1e-10);
  CHECK(similarity_residual(cycloid_curve(1.0), TiltField::reflection(), {0.5, 0.0, 1}, grid) < 1e-10);
  CHECK(similarity_residual(circle_curve(1.0), TiltField::evolute(), {1.0, 0.0, 1}, grid) ==
        doctest::Approx(1.0));
  const InclinationCurve bounded("bounded", {0.0, 1.0, 2}, {[](double) { return 1.0; }});
  CHECK(test::error_of([&] {
          similarity_residual(bounded, TiltField::evolute(), {1.0, 0.0, 1}, {0.0, 1.0, 5});
        }) == ErrorCode::domain);
}

TEST_CASE("advance is rewritten as delay") {
  const DelayNormalization n = normalize_to_delay(0.3, 1.5, -0.7);
  CHECK(n.flipped);
  CHECK(n.phi0 == -0.3);
  CHECK(n.factor_a == -1.5);
  CHECK(n.alpha == 0.7);
  CHECK_FALSE(normalize_to_delay(0.3, 1.5, 0.7).flipped);
}

TEST_CASE("caustic CSV header") {
  std::ostringstream out;
  write_caustic_csv(out, caustic_curve(circle_curve(1.0), TiltField::reflection(), {0.0, 1.0, 3}).samples());
  CHECK(out.str().rfind("theta,theta1,x,y,R1,ray_length\n", 0) == 0);
}

}  // TEST_SUITE
