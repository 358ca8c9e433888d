#include "caustics/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "caustics/caustic.hpp"
#include "caustics/error.hpp"
#include "caustics/kernels.hpp"
#include "caustics/oracle.hpp"
#include "caustics/pantograph.hpp"
#include "caustics/skew.hpp"
#include "caustics/specfun.hpp"

namespace caustics::verify {

namespace {

constexpr double kPi = std::numbers::pi;

using Checks = std::vector<Check>;

// metric <= tolerance passes; NaN never does.
void add(Checks& out, std::string_view suite, std::string name, double metric, double tolerance) {
  out.push_back({std::string(suite), std::move(name), metric, tolerance, metric <= tolerance});
}

// Boolean checks report 0 (holds) or 1 (fails) against tolerance 0.
void add_flag(Checks& out, std::string_view suite, std::string name, bool holds) {
  add(out, suite, std::move(name), holds ? 0.0 : 1.0, 0.0);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Nephroid traced by horizontal rays reflected in the unit circle, as a
// function of the mirror angle t.
PlanePoint nephroid(double t) {
  return {0.75 * std::cos(t) - 0.25 * std::cos(3.0 * t), 0.75 * std::sin(t) - 0.25 * std::sin(3.0 * t)};
}

Checks nephroid_suite() {
  Checks out;
  const AngleInterval grid{0.0, kPi, 1000};
  const TiltField refl = TiltField::reflection();
  double worst = 0.0;
  double worst_incl = 0.0;
  for (double t : grid.nodes()) {
    const double r1 = caustic_radius(1.0, 0.0, refl.phi(t), refl.phi1(t), refl.phi2(t));
    worst = std::max(worst, std::fabs(r1 - 0.75 * std::cos(t)));
    const double t1 = t + 0.5 * kPi - refl.phi(t);
    worst_incl = std::max(worst_incl, std::fabs(r1 - 0.75 * std::cos(0.5 * t1)));
  }
  add(out, "nephroid", "R1 = 3/4 cos(theta)", worst, 1e-12);
  add(out, "nephroid", "R1(theta1) = 3/4 cos(theta1/2)", worst_incl, 1e-12);
  return out;
}

// Hausdorff distance between the numeric envelope of n reflected rays and
// the closed-form nephroid over the same parameter range.
double semicircle_envelope_distance(std::size_t n) {
  std::vector<PlanePoint> mirror;
  std::vector<double> ts;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -0.5 * kPi + kPi * static_cast<double>(i) / static_cast<double>(n - 1);
    ts.push_back(t);
    mirror.push_back({std::cos(t), std::sin(t)});
  }
  const Envelope env = envelope_numeric(reflect_horizontal(mirror, ts));
  const double lo = env.thetas.front();
  const double hi = env.thetas.back();
  std::vector<PlanePoint> exact;
  const std::size_t dense = 20 * n;
  for (std::size_t i = 0; i < dense; ++i) {
    exact.push_back(nephroid(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(dense - 1)));
  }
  const std::vector<PlanePoint> cusps{{0.0, -1.0}, {0.5, 0.0}, {0.0, 1.0}};
  return hausdorff(env.points, exact, cusps, 1e-2);
}

Checks oracle_suite() {
  Checks out;
  const double d1 = semicircle_envelope_distance(2000);
  const double d2 = semicircle_envelope_distance(4000);
  add(out, "oracle", "envelope vs nephroid (2000 rays)", d1, 1e-3);
  add(out, "oracle", "halving the step halves the distance", d2 / d1, 0.5);
  return out;
}

Checks pantograph_checks(std::string_view suite, int m) {
  Checks out;
  const int k = m - 1;
  const PantographSeries s = solve_series(k, 30);
  const PantographSolution sol = make_solution(s, 4.0 * kPi);
  add(out, suite, "residual on [0.01, 2pi]", pantograph_residual(sol, {0.01, 2.0 * kPi, 2000}), 1e-8);
  bool parity = true;
  bool sign = true;
  bool bound = true;
  for (int n = k; n <= s.order; ++n) {
    const double c = s.coeff(n);
    if ((n - k) % 2 != 0) parity = parity && c == 0.0;
    if ((n - k) % 2 == 0 && k >= 1) sign = sign && c > 0.0;
    bound = bound && std::fabs(c) * std::pow(0.5 * kPi, n) <= s.bound_M * (1.0 + 1e-12);
  }
  add_flag(out, suite, "parity zeros", parity);
  if (k >= 1) add_flag(out, suite, "uniform sign", sign);
  add_flag(out, suite, "|a_n| (pi/2)^n <= M", bound);
  return out;
}

Checks cycloid_suite() {
  Checks out = pantograph_checks("cycloid", 1);
  const AngleInterval grid{0.01, kPi - 0.01, 1000};
  add(out, "cycloid", "similarity residual a=1/2",
      similarity_residual(cycloid_curve(1.0), TiltField::reflection(), SimilaritySpec{0.5, 0.0, 1}, grid), 1e-10);
  const MirrorReport rep = mirror_report(make_solution(solve_series(0, 30), 4.0 * kPi), {0.0, 4.0 * kPi, 2000});
  add(out, "cycloid", "zero deviation", rep.max_zero_deviation, 1e-10);
  add(out, "cycloid", "arc ratio spread", std::max(std::fabs(rep.rho_max - 1.0), std::fabs(rep.rho_min - 1.0)),
      1e-10);
  add(out, "cycloid", "cusp collinearity", rep.collinearity, 1e-10);
  add(out, "cycloid", "zero-cusp collinearity", rep.zero_collinearity, 1e-10);
  return out;
}

Checks pantograph_suite() {
  Checks out = pantograph_checks("pantograph", 2);
  add_flag(out, "pantograph", "a = 5/16 exactly", similarity_factor_exact(1) == Rational(5, 16));
  add(out, "pantograph", "a_3 = 1/39", std::fabs(solve_series(1, 30).coeff(3) - 1.0 / 39.0), 1e-15);
  const PantographSolution sol = make_solution(solve_series(1, 30), 4.0 * kPi);
  const MirrorReport rep = mirror_report(sol, {0.0, 4.0 * kPi, 2000});
  double rmax = 0.0;
  for (const auto& f : rep.mirror) rmax = std::max(rmax, std::fabs(f.radius));
  // These hold when the mirror deviates from the cycloid picture.
  add(out, "pantograph", "R(pi) away from 0 (negated margin)", 1e-3 * rmax - std::fabs(continue_R(sol, kPi).first),
      0.0);
  add(out, "pantograph", "arc ratio spread (negated margin)", 1e-3 - (rep.rho_max - rep.rho_min), 0.0);
  add_flag(out, "pantograph", "mirror is not vertical", !rep.mirror_vertical);
  // Cusps at theta = 0, pi/2, pi, 2pi, 4pi line up for every solution; the
  // zeros of R drift off that line.
  add(out, "pantograph", "fixed-angle cusp collinearity", rep.collinearity, 1e-10);
  const MirrorReport cyc = mirror_report(make_solution(solve_series(0, 30), 4.0 * kPi), {0.0, 4.0 * kPi, 2000});
  add_flag(out, "pantograph", "zero cusps off the line (m=2)", rep.zero_collinearity > cyc.zero_collinearity);
  for (const Check& c : pantograph_checks("pantograph", 3)) {
    out.push_back(c);
    out.back().name = "m=3 " + c.name;
  }
  const MirrorReport m3 = mirror_report(make_solution(solve_series(2, 30), 4.0 * kPi), {0.0, 4.0 * kPi, 2000});
  add_flag(out, "pantograph", "zero cusps off the line (m=3)", m3.zero_collinearity > cyc.zero_collinearity);
  return out;
}

Checks parabola_suite() {
  Checks out;
  const double A = 1.5;
  const InclinationCurve mirror = parabola_mirror(A);
  const AngleInterval grid{0.2, kPi - 0.2, 1000};
  ReconstructOptions opts;
  opts.anchor = parabola_anchor(A, grid.lo);
  opts.quadrature.abs_tol = 1e-13;
  const CausticCurve cc = caustic_curve(mirror, TiltField::reflection(), grid, opts);
  const auto samples = cc.samples();
  Vec2 mean{};
  for (const auto& c : samples) mean += c.position;
  mean = mean / static_cast<double>(samples.size());
  double scatter = samples.size() == grid.n_samples ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& c : samples) scatter = std::max(scatter, distance(c.position, mean));
  double implicit = 0.0;
  for (const auto& f : cc.source) {
    const PlanePoint p = f.position;
    implicit = std::max(implicit, std::fabs(p.y * p.y + 2.0 * A * p.x + A * A));
  }
  add(out, "parabola", "caustic scatter", scatter, 1e-7);
  add(out, "parabola", "|y^2 + 2Ax + A^2|", implicit, 1e-8);
  return out;
}

Checks skew_suite(std::mt19937_64& rng) {
  Checks out;
  const AngleInterval grid{0.0, 2.0, 400};
  double pbp = 0.0, inv = 0.0, ode = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double phi = uniform(rng, -1.2, 1.2);
    const double a = uniform(rng, -2.0, 2.0);
    pbp = std::max(pbp, family_residual(point_by_point_curve(uniform(rng, 0.5, 2.0), a, phi),
                                        SkewCase::point_by_point, a, phi, 0.0, grid));
    const InversePositionCurve c =
        inverse_position_curve(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), a, phi);
    if (c.alpha) inv = std::max(inv, family_residual(c.curve, SkewCase::inverse_position, a, phi, *c.alpha, grid));
    double scale = 1.0;
    for (double t : grid.nodes()) scale = std::max(scale, std::fabs(c.curve.radius(t)));
    for (double t : grid.nodes()) {
      const double r2 = c.curve.second_derivative(t).value();
      ode = std::max(ode, std::fabs(r2 + c.omega_sq * c.curve.radius(t)) / scale);
    }
  }
  add(out, "skew", "point-by-point residual", pbp, 1e-9);
  add(out, "skew", "inverse-position residual", inv, 1e-9);
  add(out, "skew", "R'' + omega^2 R", ode, 1e-9);
  const double phi = 0.4;
  const bool linear = inverse_position_curve(1.0, 1.0, -std::sin(phi), phi).regime == InverseRegime::linear &&
                      inverse_position_curve(1.0, 0.0, std::sin(phi), phi).regime == InverseRegime::linear &&
                      inverse_position_curve(1.0, 1.0, -std::sin(phi) + 1e-9, phi).regime != InverseRegime::linear;
  add_flag(out, "skew", "involutes exactly at a = +-sin phi", linear);
  return out;
}

Checks delay_suite(std::mt19937_64& rng) {
  Checks out;
  double root = 0.0, fam = 0.0;
  const std::vector<int> branches{0, -1, 1, 2};
  for (int i = 0; i < 20; ++i) {
    const double a = uniform(rng, 0.2, 2.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const double alpha = uniform(rng, 0.1, 2.0);
    const double phi = uniform(rng, -1.0, 1.0);
    const auto roots = delay_roots(a, alpha, phi, branches);
    const double scale = std::max(1.0, std::fabs(a / std::cos(phi)));
    for (const auto& r : roots) root = std::max(root, r.residual / scale);
    SkewFamilySpec spec{phi, a, SkewCase::delay, alpha, {{1.0, 0.0}}, {0}};
    const CharacteristicRoot r0 = roots.front();
    fam = std::max(fam, family_residual(delay_curve(spec, std::span(&r0, 1)), SkewCase::delay, a, phi, alpha,
                                        {0.0, 2.0, 400}));
  }
  add(out, "delay", "Lambert-equation residual", root, 1e-10);
  add(out, "delay", "delay similarity residual", fam, 1e-9);
  double trip = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double r = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
    const std::complex<double> z = std::polar(r, uniform(rng, -kPi, kPi));
    for (int k = -2; k <= 2; ++k) {
      const auto w = lambert_w(k, z);
      trip = std::max(trip, std::abs(w * std::exp(w) - z) / std::abs(z));
    }
  }
  add(out, "delay", "Lambert W round trip", trip, 1e-12);
  return out;
}

Checks puiseux_suite() {
  Checks out;
  const PuiseuxReport rep = puiseux_diagnostics(0.2, 3.0, {0.05, 4.0 * kPi, 4000});
  add(out, "puiseux", "cusps at n pi / gamma", rep.max_cusp_error, 1e-9);
  add(out, "puiseux", "distance ratio e^{c pi / gamma}", rep.max_ratio_error, 1e-6);
  return out;
}

// Max error of the degree 2 n_max + 1 Taylor polynomial of tan on |x| <= r.
double tan_series_error(int n_max, double r) {
  const auto tau = tan_coeffs(n_max);
  double worst = 0.0;
  for (int i = 0; i <= 240; ++i) {
    const double x = -r + 2.0 * r * i / 240.0;
    double acc = 0.0;
    for (int n = n_max; n >= 0; --n) acc = acc * x * x + tau[n];
    worst = std::max(worst, std::fabs(acc * x - std::tan(x)));
  }
  return worst;
}

Checks tan_suite() {
  Checks out;
  // The truncation tail at n_max = 30 is 1.3e-7 at x = 1.2, so 1e-10 there
  // needs about 43 terms.
  add(out, "tan", "series n_max=30 on |x| <= 1", tan_series_error(30, 1.0), 1e-10);
  add(out, "tan", "series n_max=45 on |x| <= 1.2", tan_series_error(45, 1.2), 1e-10);
  const auto tau = tan_coeffs(30);
  bool bound = true;
  for (int n = 1; n <= 30; ++n) bound = bound && tau[n] > 0.0 && tau[n] <= kPi * kPi / 3.0 * std::pow(2.0 / kPi, 2 * n);
  add_flag(out, "tan", "0 < tau <= (pi^2/3)(2/pi)^2n", bound);
  return out;
}

Checks kernels_suite(std::mt19937_64& rng) {
  Checks out;
  const std::size_t n = 1003;
  std::vector<double> bx(n), by(n), dx(n), dy(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    bx[i] = uniform(rng, -1, 1);
    by[i] = uniform(rng, -1, 1);
    const double t = uniform(rng, -kPi, kPi);
    dx[i] = std::cos(t);
    dy[i] = std::sin(t);
    q[i] = uniform(rng, -1, 1);
  }
  const kernels::RaysSoA rays{bx, by, dx, dy};
  std::vector<double> sx(n - 1), sy(n - 1), vx(n - 1), vy(n - 1), sd(n), vd(n), sh(n), vh(n);
  std::vector<std::uint8_t> sp(n - 1), vp(n - 1);
  const std::vector<double> coeffs{0.5, -1.0, 0.25, 2.0, -0.125};
  kernels::scalar::intersect_consecutive(rays, kParallelTol, sx, sy, sp);
  kernels::scalar::min_sq_dist_to_segments(q, bx, dx, dy, by, q, sd);
  kernels::scalar::horner(coeffs, q, sh);
  if (!kernels::avx2_available()) {
    add_flag(out, "kernels", "avx2 unavailable, scalar only", true);
    return out;
  }
  kernels::avx2::intersect_consecutive(rays, kParallelTol, vx, vy, vp);
  kernels::avx2::min_sq_dist_to_segments(q, bx, dx, dy, by, q, vd);
  kernels::avx2::horner(coeffs, q, vh);
  auto same = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(a[i] == b[i] || (std::isnan(a[i]) && std::isnan(b[i])))) return false;
    }
    return true;
  };
  add_flag(out, "kernels", "intersections bit-identical", same(sx, vx) && same(sy, vy) && sp == vp);
  add_flag(out, "kernels", "segment distances bit-identical", same(sd, vd));
  add_flag(out, "kernels", "horner bit-identical", same(sh, vh));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"nephroid", "oracle", "cycloid", "pantograph", "parabola",
                                              "skew",     "delay",  "puiseux", "tan",        "kernels"};
  return names;
}

std::vector<Check> run_suite(std::string_view name, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (name == "nephroid") return nephroid_suite();
  if (name == "oracle") return oracle_suite();
  if (name == "cycloid") return cycloid_suite();
  if (name == "pantograph") return pantograph_suite();
  if (name == "parabola") return parabola_suite();
  if (name == "skew") return skew_suite(rng);
  if (name == "delay") return delay_suite(rng);
  if (name == "puiseux") return puiseux_suite();
  if (name == "tan") return tan_suite();
  if (name == "kernels") return kernels_suite(rng);
  fail(ErrorCode::validation, "unknown suite '" + std::string(name) + "'");
}

}  // namespace caustics::verify
