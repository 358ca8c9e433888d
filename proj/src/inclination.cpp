#include "caustics/inclination.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "caustics/csv.hpp"
#include "caustics/error.hpp"

namespace caustics {

namespace {

std::string fmt(double v) { return csv::format(v); }

double bisect_sign_change(const InclinationCurve& curve, double a, double fa, double b) {
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = curve.radius(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Golden-section minimum of |R| on [a, b].
double min_abs_radius(const InclinationCurve& curve, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = std::fabs(curve.radius(c));
  double fd = std::fabs(curve.radius(d));
  for (int it = 0; it < 120 && (b - a) > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = std::fabs(curve.radius(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = std::fabs(curve.radius(d));
    }
  }
  return std::min(fc, fd);
}

}  // namespace

void AngleInterval::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    fail(ErrorCode::domain, "angle interval needs lo < hi, got [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  if (n_samples < 2) fail(ErrorCode::domain, "angle interval needs at least 2 samples");
}

double AngleInterval::node(std::size_t i) const {
  if (i + 1 == n_samples) return hi;
  return lo + static_cast<double>(i) * step();
}

std::vector<double> AngleInterval::nodes() const {
  std::vector<double> out(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) out[i] = node(i);
  return out;
}

InclinationCurve::InclinationCurve(std::string label, AngleInterval domain, Functions fns,
                                   std::vector<double> poles)
    : label_(std::move(label)), domain_(domain), fns_(std::move(fns)), poles_(std::move(poles)) {
  if (!fns_.radius) fail(ErrorCode::degenerate_curve, "curve '" + label_ + "' has no radius function");
  domain_.validate();
  std::sort(poles_.begin(), poles_.end());
}

double InclinationCurve::derivative(double theta) const {
  if (fns_.derivative) return fns_.derivative(theta);
  const double h = 1e-5 * std::max(1.0, std::fabs(theta));
  const double f = fns_.radius(theta + h);
  const double b = fns_.radius(theta - h);
  const double f2 = fns_.radius(theta + 2 * h);
  const double b2 = fns_.radius(theta - 2 * h);
  return (8.0 * (f - b) - (f2 - b2)) / (12.0 * h);
}

std::optional<double> InclinationCurve::second_derivative(double theta) const {
  if (fns_.second_derivative) return fns_.second_derivative(theta);
  return std::nullopt;
}

InclinationCurve circle_curve(double radius) {
  if (radius == 0.0) fail(ErrorCode::degenerate_curve, "circle radius must be nonzero");
  return InclinationCurve("circle", kUnboundedDomain,
                          {[radius](double) { return radius; }, [](double) { return 0.0; },
                           [](double) { return 0.0; }});
}

InclinationCurve cycloid_curve(double scale) {
  if (scale == 0.0) fail(ErrorCode::degenerate_curve, "cycloid scale must be nonzero");
  return InclinationCurve("cycloid", kUnboundedDomain,
                          {[scale](double t) { return scale * std::sin(t); },
                           [scale](double t) { return scale * std::cos(t); },
                           [scale](double t) { return -scale * std::sin(t); }});
}

InclinationCurve log_spiral_curve(double amplitude, double rate) {
  if (amplitude == 0.0) fail(ErrorCode::degenerate_curve, "log spiral amplitude must be nonzero");
  return InclinationCurve(
      "log_spiral", kUnboundedDomain,
      {[amplitude, rate](double t) { return amplitude * std::exp(rate * t); },
       [amplitude, rate](double t) { return amplitude * rate * std::exp(rate * t); },
       [amplitude, rate](double t) { return amplitude * rate * rate * std::exp(rate * t); }});
}

InclinationCurve polynomial_curve(std::vector<double> coeffs) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; })) {
    fail(ErrorCode::degenerate_curve, "polynomial radius is identically zero");
  }
  auto eval = [](const std::vector<double>& c, double t, int d) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > static_cast<std::size_t>(d);) {
      double f = 1.0;
      for (int k = 0; k < d; ++k) f *= static_cast<double>(j - static_cast<std::size_t>(k));
      acc = acc * t + f * c[j];
    }
    return acc;
  };
  return InclinationCurve("series", kUnboundedDomain,
                          {[=](double t) { return eval(coeffs, t, 0); },
                           [=](double t) { return eval(coeffs, t, 1); },
                           [=](double t) { return eval(coeffs, t, 2); }});
}

AngleInterval clip_to_poles(const InclinationCurve& curve, const AngleInterval& interval) {
  interval.validate();
  AngleInterval out = interval;
  for (double p : curve.poles()) {
    if (p > interval.lo - kPoleGuard && p <= interval.lo + kPoleGuard) {
      out.lo = std::max(out.lo, p + kPoleGuard);
    } else if (p >= interval.hi - kPoleGuard && p < interval.hi + kPoleGuard) {
      out.hi = std::min(out.hi, p - kPoleGuard);
    } else if (p > interval.lo && p < interval.hi) {
      fail(ErrorCode::domain, "pole of R at theta = " + fmt(p) + " lies inside [" +
                                  fmt(interval.lo) + ", " + fmt(interval.hi) + "]");
    }
  }
  if (!(out.lo < out.hi)) fail(ErrorCode::domain, "interval vanishes after pole clipping");
  const auto& dom = curve.domain();
  if (out.lo < dom.lo || out.hi > dom.hi) {
    fail(ErrorCode::domain, "interval [" + fmt(out.lo) + ", " + fmt(out.hi) +
                                "] leaves the domain of curve '" + curve.label() + "'");
  }
  return out;
}

std::vector<PlanePoint> positions_at(const InclinationCurve& curve, std::span<const double> thetas,
                                     const ReconstructOptions& options) {
  std::vector<PlanePoint> out;
  out.reserve(thetas.size());
  if (thetas.empty()) return out;
  auto integrand = [&curve](double t) -> std::array<double, 2> {
    const double r = curve.radius(t);
    return {r * std::cos(t), r * std::sin(t)};
  };
  Vec2 acc{};
  out.push_back(options.anchor);
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    if (!(thetas[i] >= thetas[i - 1])) fail(ErrorCode::domain, "angles must be nondecreasing");
    const auto seg = integrate<2>(integrand, thetas[i - 1], thetas[i], options.quadrature);
    acc += Vec2{seg[0], seg[1]};
    out.push_back(options.anchor + rotate(acc, options.frame_rotation));
  }
  return out;
}

std::vector<FrameSample> reconstruct(const InclinationCurve& curve, const AngleInterval& interval,
                                     const ReconstructOptions& options) {
  const AngleInterval grid = clip_to_poles(curve, interval);
  const std::vector<double> thetas = grid.nodes();
  std::vector<FrameSample> out(thetas.size());

  auto integrand = [&curve](double t) -> std::array<double, 3> {
    const double r = curve.radius(t);
    return {r * std::cos(t), r * std::sin(t), r};
  };

  Vec2 acc{};
  double s = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double t = thetas[i];
    const double r = curve.radius(t);
    if (!std::isfinite(r)) {
      fail(ErrorCode::evaluation, "R is not finite at theta = " + fmt(t));
    }
    if (i > 0) {
      const auto seg = integrate<3>(integrand, thetas[i - 1], t, options.quadrature);
      acc += Vec2{seg[0], seg[1]};
      s += seg[2];
    }
    FrameSample& f = out[i];
    f.theta = t;
    f.position = options.anchor + rotate(acc, options.frame_rotation);
    f.tangent = unit_at(t + options.frame_rotation);
    f.normal = perp(f.tangent);
    f.radius = r;
    f.arclength = s;
  }
  return out;
}

CuspScan find_cusps(const InclinationCurve& curve, const AngleInterval& interval) {
  const AngleInterval grid = clip_to_poles(curve, interval);
  const std::vector<double> t = grid.nodes();
  std::vector<double> v(t.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    v[i] = curve.radius(t[i]);
    if (!std::isfinite(v[i])) fail(ErrorCode::evaluation, "R is not finite at theta = " + fmt(t[i]));
    scale = std::max(scale, std::fabs(v[i]));
  }
  const double flat_tol = 1e-10 * std::max(1.0, scale);
  const double edge = 1e-9;

  CuspScan scan;
  auto interior = [&](double x) { return x > grid.lo + edge && x < grid.hi - edge; };
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (v[i] == 0.0) {
      if (i == 0) continue;
      const double before = v[i - 1];
      const double after = v[i + 1];
      if (before * after < 0.0) {
        if (interior(t[i])) scan.cusps.push_back(t[i]);
      } else if (interior(t[i])) {
        scan.flat_points.push_back(t[i]);
      }
      continue;
    }
    if (v[i + 1] != 0.0 && (v[i] < 0.0) != (v[i + 1] < 0.0)) {
      const double root = bisect_sign_change(curve, t[i], v[i], t[i + 1]);
      if (interior(root)) scan.cusps.push_back(root);
      continue;
    }
    // Touching zero between nodes: a local minimum of |R| with no sign change.
    if (i > 0 && v[i - 1] != 0.0 && (v[i - 1] < 0.0) == (v[i] < 0.0) &&
        (v[i] < 0.0) == (v[i + 1] < 0.0) && std::fabs(v[i]) <= std::fabs(v[i - 1]) &&
        std::fabs(v[i]) < std::fabs(v[i + 1])) {
      if (min_abs_radius(curve, t[i - 1], t[i + 1]) <= flat_tol && interior(t[i])) {
        scan.flat_points.push_back(t[i]);
      }
    }
  }
  return scan;
}

double frenet_residual(std::span<const FrameSample> samples) {
  if (samples.size() < 3) {
    fail(ErrorCode::degenerate_sampling, "Frenet residual needs at least 3 samples");
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double ds = samples[i + 1].arclength - samples[i - 1].arclength;
    if (ds == 0.0) {
      fail(ErrorCode::degenerate_sampling,
           "duplicate arclength around theta = " + fmt(samples[i].theta));
    }
    if (samples[i].radius == 0.0) {
      fail(ErrorCode::cusp, "cusp at sample theta = " + fmt(samples[i].theta));
    }
    const Vec2 dT = (samples[i + 1].tangent - samples[i - 1].tangent) / ds;
    const Vec2 kN = samples[i].normal / samples[i].radius;
    worst = std::max(worst, norm(dT - kN));
  }
  return worst;
}

void write_frame_csv(std::ostream& out, std::span<const FrameSample> samples) {
  csv::write_header(out, "theta,x,y,R,s");
  for (const auto& f : samples) {
    csv::write_row(out, {f.theta, f.position.x, f.position.y, f.radius, f.arclength});
  }
}

std::vector<FrameSample> read_frame_csv(std::istream& in) {
  const auto rows = csv::read(in, "theta,x,y,R,s");
  std::vector<FrameSample> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != 5) fail(ErrorCode::validation, "curve CSV rows need 5 columns");
    FrameSample f;
    f.theta = r[0];
    f.position = {r[1], r[2]};
    f.tangent = unit_at(r[0]);
    f.normal = perp(f.tangent);
    f.radius = r[3];
    f.arclength = r[4];
    out.push_back(f);
  }
  return out;
}

}  // namespace caustics
