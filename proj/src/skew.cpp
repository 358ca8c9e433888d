#include "caustics/skew.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "caustics/csv.hpp"
#include "caustics/error.hpp"
#include "caustics/specfun.hpp"

namespace caustics {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) { return csv::format(v); }

void check_tilt(double phi0) {
  if (!std::isfinite(phi0) || !(std::fabs(phi0) < 0.5 * kPi)) {
    fail(ErrorCode::domain, "|phi0| must be below pi/2 (cos phi0 vanishes), got " + fmt(phi0));
  }
}

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) fail(ErrorCode::domain, std::string(name) + " must be finite");
}

// Wraps an angle into (-pi, pi].
double wrap_pi(double u) {
  u = std::remainder(u, 2.0 * kPi);
  return u <= -kPi ? u + 2.0 * kPi : u;
}

std::optional<double> implied_alpha(InverseRegime regime, double rate, double A, double B, double a,
                                    double phi0) {
  const double c = std::cos(phi0);
  const double s = std::sin(phi0);
  switch (regime) {
    case InverseRegime::trigonometric: {
      // (p, q) = a M(w alpha) (A, B), M(u) the reflection [[cos u, sin u], [sin u, -cos u]].
      const double p = B * rate * c + A * s;
      const double q = -A * rate * c + B * s;
      const double u = wrap_pi(std::atan2(q / a, p / a) + std::atan2(B, A));
      return u / rate;
    }
    case InverseRegime::hyperbolic: {
      const double p = B * rate * c + A * s;
      const double q = A * rate * c + B * s;
      const double scale = std::max(std::fabs(A), std::fabs(B));
      if (a == 0.0) {
        if (std::fabs(p) <= 1e-12 * scale && std::fabs(q) <= 1e-12 * scale) return 0.0;
        return std::nullopt;
      }
      // (p, q) = a H(b alpha) (A, B), H(u) = [[cosh u, sinh u], [-sinh u, -cosh u]].
      const double det = B * B - A * A;
      if (std::fabs(det) <= 1e-14 * scale * scale) return std::nullopt;
      const double v1 = p / a;
      const double v2 = q / a;
      const double ch = (-A * v1 - B * v2) / det;
      const double sh = (A * v2 + B * v1) / det;
      if (!(ch > 0.0) || std::fabs(ch * ch - sh * sh - 1.0) > 1e-8 * std::max(1.0, ch * ch)) {
        return std::nullopt;
      }
      return std::asinh(sh) / rate;
    }
    case InverseRegime::linear: {
      if (s == 0.0 || a == s) {
        if (B == 0.0) return 0.0;  // constant R: any alpha works
        return std::nullopt;
      }
      if (B == 0.0) return std::nullopt;
      return -(c * B + 2.0 * s * A) / (s * B);
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SkewCase c) {
  switch (c) {
    case SkewCase::point_by_point: return "point_by_point";
    case SkewCase::inverse_position: return "inverse_position";
    case SkewCase::delay: return "delay";
  }
  return "?";
}

std::string_view to_string(InverseRegime r) {
  switch (r) {
    case InverseRegime::trigonometric: return "trigonometric";
    case InverseRegime::linear: return "linear";
    case InverseRegime::hyperbolic: return "hyperbolic";
  }
  return "?";
}

void SkewFamilySpec::validate() const {
  check_tilt(phi0);
  check_finite(factor_a, "a");
  check_finite(alpha, "alpha");
  if (kind == SkewCase::delay && !(alpha > 0.0)) {
    fail(ErrorCode::domain, "delay case needs alpha > 0 after normalization, got " + fmt(alpha));
  }
}

InclinationCurve point_by_point_curve(double amplitude, double a, double phi0) {
  check_tilt(phi0);
  check_finite(a, "a");
  check_finite(amplitude, "A");
  if (amplitude == 0.0) fail(ErrorCode::degenerate_curve, "point-by-point family needs A != 0");
  const double rate = (a - std::sin(phi0)) / std::cos(phi0);
  if (rate == 0.0) return circle_curve(amplitude);
  return InclinationCurve(
      "point_by_point", kUnboundedDomain,
      {[=](double t) { return amplitude * std::exp(rate * t); },
       [=](double t) { return amplitude * rate * std::exp(rate * t); },
       [=](double t) { return amplitude * rate * rate * std::exp(rate * t); }});
}

double inverse_omega_sq(double a, double phi0) {
  const double s = std::sin(phi0);
  const double c = std::cos(phi0);
  // Factored so that a = +-sin phi gives exactly zero.
  return (a - s) * (a + s) / (c * c);
}

InversePositionCurve inverse_position_curve(double A, double B, double a, double phi0) {
  check_tilt(phi0);
  check_finite(a, "a");
  check_finite(A, "A");
  check_finite(B, "B");
  if (A == 0.0 && B == 0.0) fail(ErrorCode::degenerate_curve, "inverse-position family needs (A, B) != 0");
  const double w2 = inverse_omega_sq(a, phi0);
  InverseRegime regime;
  double rate = 0.0;
  InclinationCurve::Functions fns;
  if (w2 > 0.0) {
    regime = InverseRegime::trigonometric;
    const double w = rate = std::sqrt(w2);
    fns = {[=](double t) { return A * std::cos(w * t) + B * std::sin(w * t); },
           [=](double t) { return w * (B * std::cos(w * t) - A * std::sin(w * t)); },
           [=](double t) { return -w2 * (A * std::cos(w * t) + B * std::sin(w * t)); }};
  } else if (w2 < 0.0) {
    regime = InverseRegime::hyperbolic;
    const double b = rate = std::sqrt(-w2);
    fns = {[=](double t) { return A * std::cosh(b * t) + B * std::sinh(b * t); },
           [=](double t) { return b * (A * std::sinh(b * t) + B * std::cosh(b * t)); },
           [=](double t) { return -w2 * (A * std::cosh(b * t) + B * std::sinh(b * t)); }};
  } else {
    regime = InverseRegime::linear;
    fns = {[=](double t) { return A + B * t; }, [=](double) { return B; }, [](double) { return 0.0; }};
  }
  InversePositionCurve out{InclinationCurve("inverse_position", kUnboundedDomain, std::move(fns)),
                           regime,
                           w2,
                           rate,
                           A,
                           B,
                           std::nullopt};
  out.alpha = implied_alpha(regime, rate, A, B, a, phi0);
  return out;
}

InversePositionCurve inverse_position_for_alpha(double A, double alpha, double a, double phi0) {
  check_tilt(phi0);
  check_finite(alpha, "alpha");
  if (A == 0.0) fail(ErrorCode::degenerate_curve, "inverse-position family needs A != 0");
  const double c = std::cos(phi0);
  const double s = std::sin(phi0);
  const double w2 = inverse_omega_sq(a, phi0);
  double B = 0.0;
  if (w2 == 0.0) {
    if (s == 0.0 || a == s) {
      B = 0.0;
    } else {
      const double den = s * alpha + c;
      if (den == 0.0) fail(ErrorCode::domain, "no involute of the circle has alpha = " + fmt(alpha));
      B = -2.0 * s * A / den;
    }
  } else {
    // The 2x2 system for (A, B) is singular; take the better-conditioned row.
    const bool trig = w2 > 0.0;
    const double r = std::sqrt(std::fabs(w2));
    const double u = r * alpha;
    const double cu = trig ? std::cos(u) : std::cosh(u);
    const double su = trig ? std::sin(u) : std::sinh(u);
    const double row1_a = s - a * cu;
    const double row1_b = r * c - a * su;
    const double row2_a = trig ? -(r * c + a * su) : r * c + a * su;
    const double row2_b = s + a * cu;
    if (std::fabs(row1_b) >= std::fabs(row2_b)) {
      if (row1_b == 0.0) fail(ErrorCode::domain, "no inverse-position curve has alpha = " + fmt(alpha));
      B = -A * row1_a / row1_b;
    } else {
      B = -A * row2_a / row2_b;
    }
  }
  InversePositionCurve out = inverse_position_curve(A, B, a, phi0);
  out.alpha = alpha;
  return out;
}

double delay_lambert_rhs(double a, double alpha, double phi0) {
  return alpha * a * std::exp(alpha * std::tan(phi0)) / std::cos(phi0);
}

std::vector<int> real_delay_branches(double a, double alpha, double phi0) {
  const double x = delay_lambert_rhs(a, alpha, phi0);
  const double shifted = std::numbers::e * x + 1.0;
  if (shifted < -8e-16) return {};
  if (x < 0.0) return {0, -1};
  return {0};
}

std::vector<CharacteristicRoot> delay_roots(double a, double alpha, double phi0,
                                            std::span<const int> indices, bool require_real) {
  check_tilt(phi0);
  check_finite(a, "a");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::domain, "delay roots need alpha > 0, got " + fmt(alpha));
  }
  const double t = std::tan(phi0);
  const double target = a / std::cos(phi0);
  const double rhs = delay_lambert_rhs(a, alpha, phi0);
  const std::vector<int> real = real_delay_branches(a, alpha, phi0);

  std::vector<CharacteristicRoot> out;
  out.reserve(indices.size());
  for (int k : indices) {
    if (require_real && std::find(real.begin(), real.end(), k) == real.end()) {
      std::string list;
      for (int r : real) list += (list.empty() ? "" : ", ") + std::to_string(r);
      fail(ErrorCode::branch_unavailable, "branch " + std::to_string(k) + " is not real at rhs = " +
                                              fmt(rhs) + "; real branches: {" + list + "}");
    }
    const cd w = lambert_w(k, cd(rhs, 0.0));
    CharacteristicRoot root;
    root.index_k = k;
    root.lambda = w / alpha - t;
    root.residual = std::abs((root.lambda + t) * std::exp(alpha * root.lambda) - target);
    if (!(root.residual < 1e-10 * std::max(1.0, std::fabs(target)))) {
      fail(ErrorCode::numeric, "root on branch " + std::to_string(k) + " misses the Lambert equation by " +
                                   fmt(root.residual));
    }
    out.push_back(root);
  }
  return out;
}

InclinationCurve delay_curve(const SkewFamilySpec& spec, std::span<const CharacteristicRoot> roots) {
  check_tilt(spec.phi0);
  if (spec.coefficients.size() != roots.size()) {
    fail(ErrorCode::shape, "delay family has " + std::to_string(spec.coefficients.size()) +
                               " coefficient pairs for " + std::to_string(roots.size()) + " roots");
  }
  std::vector<cd> weights;
  std::vector<cd> lambdas;
  bool any = false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto [A, B] = spec.coefficients[i];
    check_finite(A, "A_k");
    check_finite(B, "B_k");
    if (roots[i].is_real() && B != 0.0) {
      fail(ErrorCode::domain, "term " + std::to_string(i) + " has a real root and B != 0");
    }
    any = any || A != 0.0 || B != 0.0;
    // Re((A - iB) e^{lambda t}) = e^{xi t}(A cos eta t + B sin eta t).
    weights.emplace_back(A, -B);
    lambdas.push_back(roots[i].lambda);
  }
  if (!any) fail(ErrorCode::degenerate_curve, "all delay coefficients vanish: R is identically 0");
  auto eval = [weights, lambdas](double t, int order) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cd factor = weights[i] * std::exp(lambdas[i] * t);
      for (int j = 0; j < order; ++j) factor *= lambdas[i];
      acc += factor.real();
    }
    return acc;
  };
  return InclinationCurve("delay", kUnboundedDomain,
                          {[eval](double t) { return eval(t, 0); }, [eval](double t) { return eval(t, 1); },
                           [eval](double t) { return eval(t, 2); }});
}

double family_residual(const InclinationCurve& curve, SkewCase kind, double a, double phi0, double alpha,
                       const AngleInterval& interval) {
  check_tilt(phi0);
  interval.validate();
  const double c = std::cos(phi0);
  const double s = std::sin(phi0);
  double worst = 0.0;
  double scale = 1.0;
  for (double t : interval.nodes()) {
    double arg = t;
    if (kind == SkewCase::inverse_position) arg = alpha - t;
    if (kind == SkewCase::delay) arg = t - alpha;
    if (!curve.domain().contains(t) || !curve.domain().contains(arg)) {
      fail(ErrorCode::domain, "residual argument leaves the curve domain at theta = " + fmt(t));
    }
    const double r = curve.radius(t);
    const double shifted = curve.radius(arg);
    const double res = c * curve.derivative(t) + s * r - a * shifted;
    if (!std::isfinite(res)) fail(ErrorCode::evaluation, "residual is not finite at theta = " + fmt(t));
    worst = std::max(worst, std::fabs(res));
    scale = std::max({scale, std::fabs(r), std::fabs(shifted)});
  }
  return worst / scale;
}

InclinationCurve puiseux_curve(double c, double gamma) {
  check_finite(c, "c");
  check_finite(gamma, "gamma");
  if (gamma == 0.0) fail(ErrorCode::degenerate_curve, "Puiseux curve needs gamma != 0");
  return InclinationCurve(
      "puiseux", kUnboundedDomain,
      {[=](double t) { return std::exp(c * t) * std::sin(gamma * t); },
       [=](double t) { return std::exp(c * t) * (c * std::sin(gamma * t) + gamma * std::cos(gamma * t)); },
       [=](double t) {
         return std::exp(c * t) *
                ((c * c - gamma * gamma) * std::sin(gamma * t) + 2.0 * c * gamma * std::cos(gamma * t));
       }});
}

PuiseuxReport puiseux_diagnostics(double c, double gamma, const AngleInterval& interval) {
  interval.validate();
  const InclinationCurve curve = puiseux_curve(c, gamma);
  const double g = std::fabs(gamma);
  const double period = kPi / g;
  PuiseuxReport rep;
  rep.expected_ratio = std::exp(c * period);

  for (long n = static_cast<long>(std::floor(interval.lo / period)); n * period <= interval.hi; ++n) {
    const double t = static_cast<double>(n) * period;
    if (t > interval.lo && t < interval.hi) rep.expected_cusps.push_back(t);
  }

  // At least 16 scan nodes per half period so no sign change is skipped.
  AngleInterval scan = interval;
  const auto dense = static_cast<std::size_t>(std::ceil((interval.hi - interval.lo) / period * 16.0)) + 1;
  scan.n_samples = std::max(scan.n_samples, dense);
  rep.cusps = find_cusps(curve, scan).cusps;
  if (rep.cusps.size() == rep.expected_cusps.size()) {
    for (std::size_t i = 0; i < rep.cusps.size(); ++i) {
      rep.max_cusp_error = std::max(rep.max_cusp_error, std::fabs(rep.cusps[i] - rep.expected_cusps[i]));
    }
  } else {
    rep.max_cusp_error = std::numeric_limits<double>::infinity();
  }

  std::vector<double> thetas{interval.lo};
  thetas.insert(thetas.end(), rep.cusps.begin(), rep.cusps.end());
  ReconstructOptions opts;
  opts.quadrature.abs_tol = 1e-13;
  std::vector<PlanePoint> pos = positions_at(curve, thetas, opts);
  rep.cusp_positions.assign(pos.begin() + 1, pos.end());

  // z(t) = F(t) - F(lo) with F(t) = (e^{l+ t}/l+ - e^{l- t}/l-) / 2i; cusps
  // satisfy z_n + F(lo) proportional to e^{c t_n} e^{i t_n}, so -F(lo) is the center.
  const cd lp(c, 1.0 + gamma);
  const cd lm(c, 1.0 - gamma);
  if (std::abs(lp) > 0.0 && std::abs(lm) > 0.0) {
    const double lo = interval.lo;
    const cd F = (std::exp(lp * lo) / lp - std::exp(lm * lo) / lm) / cd(0.0, 2.0);
    rep.center = PlanePoint{-F.real(), -F.imag()};
  }

  const auto& z = rep.cusp_positions;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    if (rep.center) {
      const double r = distance(z[i + 1], *rep.center) / distance(z[i], *rep.center);
      rep.distance_ratios.push_back(r);
      err = std::max(err, std::fabs(r - rep.expected_ratio));
    }
    if (i >= 1) {
      const double r = distance(z[i + 1], z[i]) / distance(z[i], z[i - 1]);
      rep.spacing_ratios.push_back(r);
      if (!rep.center) err = std::max(err, std::fabs(r - rep.expected_ratio));
    }
  }
  rep.max_ratio_error = err;

  if (z.size() >= 3) {
    double spread = 0.0;
    for (const auto& p : z) {
      for (const auto& q : z) spread = std::max(spread, distance(p, q));
    }
    const Vec2 dir = (z[1] - z[0]) / distance(z[1], z[0]);
    double off = 0.0;
    for (const auto& p : z) off = std::max(off, std::fabs(cross(dir, p - z[0])));
    rep.collinearity = off / spread;
  }
  return rep;
}

}  // namespace caustics
