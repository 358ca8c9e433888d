#include "caustics/caustic.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "caustics/csv.hpp"

namespace caustics {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

std::string fmt(double v) { return csv::format(v); }

}  // namespace

TiltField::TiltField(TiltKind kind, double phi0, Fn phi, Fn phi1, Fn phi2)
    : kind_(kind), phi0_(phi0), phi_(std::move(phi)), phi1_(std::move(phi1)), phi2_(std::move(phi2)) {}

TiltField TiltField::evolute() { return TiltField(TiltKind::evolute, 0.0, {}, {}, {}); }

TiltField TiltField::skew(double phi0) {
  if (!std::isfinite(phi0)) fail(ErrorCode::domain, "skew tilt must be finite");
  return TiltField(TiltKind::skew, phi0, {}, {}, {});
}

TiltField TiltField::reflection() { return TiltField(TiltKind::reflection, 0.0, {}, {}, {}); }

TiltField TiltField::custom(Fn phi, Fn phi1, Fn phi2) {
  if (!phi || !phi1 || !phi2) fail(ErrorCode::domain, "custom tilt needs phi, phi' and phi''");
  return TiltField(TiltKind::custom, 0.0, std::move(phi), std::move(phi1), std::move(phi2));
}

double TiltField::phi(double theta) const {
  switch (kind_) {
    case TiltKind::evolute: return 0.0;
    case TiltKind::skew: return phi0_;
    case TiltKind::reflection: return kHalfPi - theta;
    case TiltKind::custom: return phi_(theta);
  }
  return 0.0;
}

double TiltField::phi1(double theta) const {
  switch (kind_) {
    case TiltKind::evolute:
    case TiltKind::skew: return 0.0;
    case TiltKind::reflection: return -1.0;
    case TiltKind::custom: return phi1_(theta);
  }
  return 0.0;
}

double TiltField::phi2(double theta) const {
  if (kind_ == TiltKind::custom) return phi2_(theta);
  return 0.0;
}

SimilaritySpec SimilaritySpec::from_alpha(double a, double alpha, int sign) {
  return SimilaritySpec{a, alpha + kHalfPi, sign};
}

double SimilaritySpec::alpha() const { return shift_beta - kHalfPi; }

CoframeState coframe_at(const InclinationCurve& curve, const TiltField& tilt, double theta) {
  const double R = curve.radius(theta);
  if (!std::isfinite(R)) fail(ErrorCode::evaluation, "R is not finite at theta = " + fmt(theta));
  if (R == 0.0) fail(ErrorCode::cusp, "R vanishes (cusp) at theta = " + fmt(theta));
  const double p1 = tilt.phi1(theta);
  if (std::fabs(1.0 - p1) < kFlatGuard) {
    fail(ErrorCode::flat_caustic, "phi' = 1 at theta = " + fmt(theta) + ": the caustic flattens");
  }
  const double p = tilt.phi(theta);
  const Vec2 T = unit_at(theta);
  const Vec2 N = perp(T);
  const double c = std::cos(p);
  const double s = std::sin(p);
  CoframeState st;
  st.theta = theta;
  st.tau = c * T - s * N;
  st.nu = s * T + c * N;
  st.chi = (1.0 - p1) / R;
  return st;
}

double caustic_radius(double R, double R_prime, double phi, double phi1, double phi2) {
  const double q = 1.0 - phi1;
  if (std::fabs(q) < kFlatGuard) fail(ErrorCode::flat_caustic, "phi' = 1: the caustic flattens");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return (((1.0 - 2.0 * phi1) * s + (phi2 / q) * c) * R + c * R_prime) / (q * q);
}

double reflection_caustic_radius(double theta, double R, double R_prime) {
  return 0.25 * (3.0 * std::cos(theta) * R + std::sin(theta) * R_prime);
}

CausticSample caustic_point(const InclinationCurve& curve, const FrameSample& sample,
                            const TiltField& tilt) {
  const double theta = sample.theta;
  const CoframeState st = coframe_at(curve, tilt, theta);
  if (st.chi == 0.0 || !std::isfinite(st.chi)) {
    fail(ErrorCode::caustic_at_infinity, "chi = 0 at theta = " + fmt(theta));
  }
  const double p = tilt.phi(theta);
  const double offset = std::cos(p) / st.chi;
  CausticSample out;
  out.source_theta = theta;
  out.caustic_theta = theta + kHalfPi - p;
  out.caustic_radius =
      caustic_radius(sample.radius, curve.derivative(theta), p, tilt.phi1(theta), tilt.phi2(theta));
  out.position = sample.position + offset * st.nu;
  out.ray_length = std::fabs(offset);
  if (!std::isfinite(out.position.x) || !std::isfinite(out.position.y)) {
    fail(ErrorCode::caustic_at_infinity, "caustic point is at infinity at theta = " + fmt(theta));
  }
  return out;
}

std::size_t CausticCurve::failures() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.ok() ? 0 : 1;
  return n;
}

std::vector<CausticSample> CausticCurve::samples() const {
  std::vector<CausticSample> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) {
    if (node.ok()) out.push_back(*node.sample);
  }
  return out;
}

CausticCurve caustic_curve(const InclinationCurve& curve, const TiltField& tilt,
                           const AngleInterval& interval, const ReconstructOptions& options) {
  CausticCurve out;
  out.source = reconstruct(curve, interval, options);
  out.nodes.reserve(out.source.size());
  for (std::size_t i = 0; i < out.source.size(); ++i) {
    CausticNode node;
    node.index = i;
    node.source_theta = out.source[i].theta;
    try {
      node.sample = caustic_point(curve, out.source[i], tilt);
    } catch (const Error& e) {
      node.error = e.code();
      node.message = "node " + std::to_string(i) + ": " + e.what();
    }
    out.nodes.push_back(std::move(node));
  }
  return out;
}

double similarity_residual(const InclinationCurve& curve, const TiltField& tilt,
                           const SimilaritySpec& spec, const AngleInterval& interval) {
  interval.validate();
  if (spec.sign != 1 && spec.sign != -1) fail(ErrorCode::domain, "similarity sign must be +1 or -1");
  if (!std::isfinite(spec.factor_a)) fail(ErrorCode::domain, "similarity factor must be finite");
  const auto& dom = curve.domain();
  double worst = 0.0;
  for (double theta : interval.nodes()) {
    const double p = tilt.phi(theta);
    const double arg = spec.sign * (theta + kHalfPi - p - spec.shift_beta);
    if (!dom.contains(theta) || !dom.contains(arg)) {
      fail(ErrorCode::domain, "similarity argument leaves the curve domain at theta = " + fmt(theta));
    }
    const double lhs =
        caustic_radius(curve.radius(theta), curve.derivative(theta), p, tilt.phi1(theta), tilt.phi2(theta));
    const double r = std::fabs(lhs - spec.factor_a * curve.radius(arg));
    if (!std::isfinite(r)) fail(ErrorCode::evaluation, "residual is not finite at theta = " + fmt(theta));
    worst = std::max(worst, r);
  }
  return worst;
}

DelayNormalization normalize_to_delay(double phi0, double factor_a, double alpha) {
  if (alpha < 0.0) return {-phi0, -factor_a, -alpha, true};
  return {phi0, factor_a, alpha, false};
}

void write_caustic_csv(std::ostream& out, std::span<const CausticSample> samples) {
  csv::write_header(out, "theta,theta1,x,y,R1,ray_length");
  for (const auto& c : samples) {
    csv::write_row(out, {c.source_theta, c.caustic_theta, c.position.x, c.position.y,
                         c.caustic_radius, c.ray_length});
  }
}

}  // namespace caustics
