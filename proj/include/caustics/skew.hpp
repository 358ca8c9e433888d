#pragma once

// Curves similar to their skew-evolutes. With a constant tilt phi the
// skew-evolute radius is cos(phi) R' + sin(phi) R, and similarity with
// factor a means
//
//   cos(phi) R'(theta) + sin(phi) R(theta) = a R(+-(theta - alpha)).
//
// Three cases: point by point (alpha = 0, + sign), inverse position
// (- sign) and delay (+ sign, alpha > 0 after normalization).

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caustics/geometry.hpp"
#include "caustics/inclination.hpp"

namespace caustics {

enum class SkewCase { point_by_point, inverse_position, delay };

std::string_view to_string(SkewCase c);

struct SkewFamilySpec {
  double phi0 = 0.0;
  double factor_a = 1.0;
  SkewCase kind = SkewCase::point_by_point;
  double alpha = 0.0;
  std::vector<std::pair<double, double>> coefficients;  // (A_k, B_k), delay case
  std::vector<int> root_indices;                        // Lambert branches, delay case

  /// Throws ErrorCode::domain when |phi0| >= pi/2, or for a delay spec whose
  /// alpha is not positive.
  void validate() const;
};

struct CharacteristicRoot {
  int index_k = 0;
  std::complex<double> lambda;
  double residual = 0.0;  // |(lambda + tan phi) e^{alpha lambda} - a / cos phi|

  bool is_real() const { return lambda.imag() == 0.0; }
};

/// R = A exp(((a - sin phi) / cos phi) theta).
InclinationCurve point_by_point_curve(double amplitude, double a, double phi0);

enum class InverseRegime { trigonometric, linear, hyperbolic };

std::string_view to_string(InverseRegime r);

/// omega^2 = (a^2 - sin^2 phi) / cos^2 phi; zero exactly when a = +-sin phi.
double inverse_omega_sq(double a, double phi0);

struct InversePositionCurve {
  InclinationCurve curve;
  InverseRegime regime;
  double omega_sq;
  double rate;  // omega, b, or 0 in the linear regime
  double A, B;
  /// Shift alpha implied by R itself through Q(theta) = R(alpha - theta);
  /// empty when no alpha makes the inverse equation hold.
  std::optional<double> alpha;
};

/// R = A cos(w t) + B sin(w t), A + B t, or A cosh(b t) + B sinh(b t).
InversePositionCurve inverse_position_curve(double A, double B, double a, double phi0);

/// Picks B so that the inverse equation holds with the requested alpha.
/// Throws ErrorCode::domain when no such B exists.
InversePositionCurve inverse_position_for_alpha(double A, double alpha, double a, double phi0);

/// Right-hand side alpha a e^{alpha tan phi} / cos phi of the Lambert equation.
double delay_lambert_rhs(double a, double alpha, double phi0);

/// Branches of W that are real at the Lambert right-hand side: {0, -1} on
/// [-1/e, 0) (a double root at -1/e), {0} on [0, inf), none below -1/e.
std::vector<int> real_delay_branches(double a, double alpha, double phi0);

/// lambda_k = W_k(rhs) / alpha - tan phi for each requested branch. With
/// `require_real`, a branch that is not real at rhs is a branch_unavailable
/// error listing the real ones.
std::vector<CharacteristicRoot> delay_roots(double a, double alpha, double phi0,
                                            std::span<const int> indices, bool require_real = false);

/// Finite sum of real terms A e^{lambda t} and complex-pair terms
/// e^{xi t}(A cos eta t + B sin eta t), one coefficient pair per root.
InclinationCurve delay_curve(const SkewFamilySpec& spec, std::span<const CharacteristicRoot> roots);

/// sup over the grid of |cos phi R' + sin phi R - a R(arg)| divided by
/// max(1, sup |R|) over the same arguments; arg is theta, alpha - theta or
/// theta - alpha according to the case.
double family_residual(const InclinationCurve& curve, SkewCase kind, double a, double phi0,
                       double alpha, const AngleInterval& interval);

/// R = e^{c theta} sin(gamma theta).
InclinationCurve puiseux_curve(double c, double gamma);

struct PuiseuxReport {
  std::vector<double> expected_cusps;  // n pi / gamma inside the interval
  std::vector<double> cusps;           // detected sign changes
  double max_cusp_error = 0.0;
  std::vector<PlanePoint> cusp_positions;  // from reconstruct, anchored at interval.lo
  std::optional<PlanePoint> center;        // absent for c = 0, gamma = +-1
  std::vector<double> distance_ratios;     // |z_{n+1} - C| / |z_n - C|
  std::vector<double> spacing_ratios;      // |z_{n+1} - z_n| / |z_n - z_{n-1}|
  double expected_ratio = 1.0;             // e^{c pi / |gamma|}
  double max_ratio_error = 0.0;
  /// Largest distance of a cusp from the line through the first two,
  /// divided by the cusp spread. Zero exactly when 1/gamma is an integer.
  double collinearity = 0.0;
};

PuiseuxReport puiseux_diagnostics(double c, double gamma, const AngleInterval& interval);

}  // namespace caustics
