#pragma once

// Conormal caustics. Rays leave the curve along nu, tilted from the normal N
// by the angle phi(theta) (positive towards T). The envelope of the rays has
// inclination theta + pi/2 - phi and a signed radius that is linear in R, R'.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caustics/error.hpp"
#include "caustics/geometry.hpp"
#include "caustics/inclination.hpp"

namespace caustics {

enum class TiltKind { evolute, skew, reflection, custom };

class TiltField {
 public:
  using Fn = std::function<double(double)>;

  static TiltField evolute();
  static TiltField skew(double phi0);
  /// Horizontal rays reflected by the curve: phi = pi/2 - theta.
  static TiltField reflection();
  static TiltField custom(Fn phi, Fn phi1, Fn phi2);

  double phi(double theta) const;
  double phi1(double theta) const;
  double phi2(double theta) const;

  TiltKind kind() const { return kind_; }
  /// Constant tilt of a skew field (0 for the evolute).
  double phi0() const { return phi0_; }

 private:
  TiltField(TiltKind kind, double phi0, Fn phi, Fn phi1, Fn phi2);

  TiltKind kind_;
  double phi0_;
  Fn phi_, phi1_, phi2_;
};

struct CoframeState {
  double theta = 0.0;
  Vec2 tau;
  Vec2 nu;
  double chi = 0.0;
};

struct CausticSample {
  double source_theta = 0.0;
  double caustic_theta = 0.0;   // theta_1
  double caustic_radius = 0.0;  // R_1
  PlanePoint position;
  double ray_length = 0.0;
};

struct SimilaritySpec {
  double factor_a = 1.0;
  double shift_beta = 0.0;
  int sign = +1;

  /// Skew and evolute equations are written with alpha = beta - pi/2.
  static SimilaritySpec from_alpha(double a, double alpha, int sign);
  double alpha() const;
};

/// |1 - phi'| below this is treated as a flat caustic.
inline constexpr double kFlatGuard = 1e-8;

CoframeState coframe_at(const InclinationCurve& curve, const TiltField& tilt, double theta);

/// Signed radius of curvature of the caustic at the source angle.
double caustic_radius(double R, double R_prime, double phi, double phi1, double phi2);

/// Caustic radius of the reflection field, written out directly:
/// (3 cos theta R + sin theta R') / 4.
double reflection_caustic_radius(double theta, double R, double R_prime);

CausticSample caustic_point(const InclinationCurve& curve, const FrameSample& sample,
                            const TiltField& tilt);

struct CausticNode {
  std::size_t index = 0;
  double source_theta = 0.0;
  std::optional<CausticSample> sample;  // empty when the node failed
  ErrorCode error = ErrorCode::domain;
  std::string message;

  bool ok() const { return sample.has_value(); }
};

struct CausticCurve {
  std::vector<FrameSample> source;
  std::vector<CausticNode> nodes;

  std::size_t failures() const;
  /// Successful samples in source order.
  std::vector<CausticSample> samples() const;
};

CausticCurve caustic_curve(const InclinationCurve& curve, const TiltField& tilt,
                           const AngleInterval& interval, const ReconstructOptions& options = {});

/// sup over the grid of |R_1(theta) - a R(+-(theta + pi/2 - phi - beta))|.
double similarity_residual(const InclinationCurve& curve, const TiltField& tilt,
                           const SimilaritySpec& spec, const AngleInterval& interval);

/// Rewrites an advance (alpha < 0) as a delay by theta -> -theta, which
/// flips the signs of phi and a.
struct DelayNormalization {
  double phi0;
  double factor_a;
  double alpha;
  bool flipped;
};
DelayNormalization normalize_to_delay(double phi0, double factor_a, double alpha);

// CSV: `theta,theta1,x,y,R1,ray_length`; failed nodes are skipped.
void write_caustic_csv(std::ostream& out, std::span<const CausticSample> samples);

}  // namespace caustics
