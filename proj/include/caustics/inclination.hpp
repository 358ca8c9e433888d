#pragma once

// Plane curves given by their inclination equation R(theta): the signed
// radius of curvature as a function of the tangent angle. Positions follow
// from x = int R cos, y = int R sin, and the (signed) arclength from
// s = int R. The tangent is always (cos theta, sin theta); it reverses
// relative to the direction of travel wherever R changes sign (a cusp).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caustics/geometry.hpp"
#include "caustics/quadrature.hpp"

namespace caustics {

struct AngleInterval {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n_samples = 2;

  /// Throws ErrorCode::domain unless lo < hi and n_samples >= 2.
  void validate() const;
  double step() const { return (hi - lo) / static_cast<double>(n_samples - 1); }
  /// Uniform node i; the last node is exactly `hi`.
  double node(std::size_t i) const;
  std::vector<double> nodes() const;
  bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// Domain used by closed-form curves that are defined for every angle.
inline constexpr AngleInterval kUnboundedDomain{-1.0e4, 1.0e4, 2};

/// Guard band kept between sampled angles and declared poles of R.
inline constexpr double kPoleGuard = 1e-6;

class InclinationCurve {
 public:
  using Fn = std::function<double(double)>;

  struct Functions {
    Fn radius;
    Fn derivative{};         // analytic R', optional
    Fn second_derivative{};  // analytic R'', optional
  };

  InclinationCurve(std::string label, AngleInterval domain, Functions fns,
                   std::vector<double> poles = {});

  double radius(double theta) const { return fns_.radius(theta); }
  /// Analytic R' when registered, otherwise a five-point central difference
  /// with step 1e-5 * max(1, |theta|) (error O(h^4)).
  double derivative(double theta) const;
  std::optional<double> second_derivative(double theta) const;

  bool has_analytic_derivative() const { return static_cast<bool>(fns_.derivative); }
  const AngleInterval& domain() const { return domain_; }
  const std::vector<double>& poles() const { return poles_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  AngleInterval domain_;
  Functions fns_;
  std::vector<double> poles_;
};

// Closed-form registry entries.
InclinationCurve circle_curve(double radius = 1.0);
InclinationCurve cycloid_curve(double scale = 1.0);             // R = scale sin(theta)
InclinationCurve log_spiral_curve(double amplitude, double rate);  // R = A e^{b theta}
InclinationCurve polynomial_curve(std::vector<double> coeffs);  // R = sum c_j theta^j

struct FrameSample {
  double theta = 0.0;
  PlanePoint position;
  Vec2 tangent;
  Vec2 normal;
  double radius = 0.0;
  double arclength = 0.0;
};

struct ReconstructOptions {
  PlanePoint anchor{};       // position of the first sample
  double frame_rotation = 0.0;  // rotates positions and frames about the anchor
  QuadratureOptions quadrature{};
};

/// Clips `interval` against declared poles sitting at (or within the guard
/// band of) its ends; a pole strictly inside is a domain error.
AngleInterval clip_to_poles(const InclinationCurve& curve, const AngleInterval& interval);

/// Positions and arclength by cumulative quadrature over the uniform grid.
std::vector<FrameSample> reconstruct(const InclinationCurve& curve,
                                     const AngleInterval& interval,
                                     const ReconstructOptions& options = {});

/// Positions only, at arbitrary increasing angles (no grid assumption).
std::vector<PlanePoint> positions_at(const InclinationCurve& curve,
                                     std::span<const double> thetas,
                                     const ReconstructOptions& options = {});

struct CuspScan {
  std::vector<double> cusps;        // sign changes of R, interior only
  std::vector<double> flat_points;  // R touches zero without changing sign
};

CuspScan find_cusps(const InclinationCurve& curve, const AngleInterval& interval);

/// max over interior samples of |dT/ds - N/R| by central differences.
double frenet_residual(std::span<const FrameSample> samples);

// CSV: header `theta,x,y,R,s`, 17 significant digits, LF endings.
void write_frame_csv(std::ostream& out, std::span<const FrameSample> samples);
std::vector<FrameSample> read_frame_csv(std::istream& in);

}  // namespace caustics
