#pragma once

// Mirrors whose reflection caustic is similar to them point by point:
//
//   sin(theta) R'(theta) + 3 cos(theta) R(theta) = 4 a R(2 theta).
//
// Writing R = Q sin(theta) gives tan(theta) Q' = 8 a Q(2 theta) - 4 Q; a
// Laurent solution Q = sum_{n >= k} a_n theta^n exists iff
// a = (k + 4) / 2^(k + 3), with coefficients from a one-step recursion.
// The series converges for |theta| < pi/2; beyond, R is continued by the
// doubling formula R(2u) = (3 cos u R(u) + sin u R'(u)) / (4 a).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caustics/geometry.hpp"
#include "caustics/inclination.hpp"
#include "caustics/specfun.hpp"

namespace caustics {

/// (k + 4) / 2^(k + 3).
double similarity_factor(int k);

/// The same factor as an exact fraction.
Rational similarity_factor_exact(int k);

struct PantographSeries {
  int k = 0;
  double factor_a = 0.0;
  int order = 0;                     // N, highest power kept
  std::vector<double> coeffs;        // a_n at index n - k, n = k..N
  std::optional<double> secondary;   // a_{-2} when k = -3
  std::vector<double> denominators;  // 2^(n+3) a - n - 4 at index n - k
  double bound_M = 0.0;              // |a_n| (pi/2)^n <= M for all n
  int bound_N0 = 0;                  // index from which the induction closes

  double coeff(int n) const;
};

/// Runs the recursion up to power N with tan coefficients from series
/// division. k must be in [-3, inf): k = -4 is the parabola
/// (see parabola_mirror). For k = -3 the secondary coefficient a_{-2} is
/// required, otherwise the vanishing denominator at n = -2 is a resonance
/// error.
PantographSeries solve_series(int k, int N, double a_k = 1.0, std::optional<double> secondary = {});

struct ExactPantographSeries {
  int k = 0;
  Rational factor_a;
  std::vector<Rational> coeffs;  // index n - k
};

/// The recursion in exact rational arithmetic (N <= 30 keeps it fast).
ExactPantographSeries solve_series_exact(int k, int N, const Rational& a_k = 1,
                                         std::optional<Rational> secondary = {});

/// Default distance kept from the edge pi/2 of the convergence disk.
inline constexpr double kSeriesGuard = 1e-3;

/// Q and its first `order` derivatives (term-wise) at theta.
std::vector<double> eval_Q_jet(const PantographSeries& series, double theta, int order,
                               double guard = kSeriesGuard);
double eval_Q(const PantographSeries& series, double theta, double guard = kSeriesGuard);

/// Q on many points. For k >= 0 this goes through the vectorised Horner
/// kernel.
std::vector<double> eval_Q_many(const PantographSeries& series, std::span<const double> thetas,
                                double guard = kSeriesGuard);

/// R = Q sin(theta) and its first `order` derivatives on the base interval.
std::vector<double> eval_R_base(const PantographSeries& series, double theta, int order,
                                double guard = kSeriesGuard);

struct PantographSolution {
  PantographSeries series;
  int jet_order = 12;
  double max_theta = 4.0 * 3.14159265358979323846;
  double guard = kSeriesGuard;
  /// Series is used below this angle, doubling above. make_solution picks
  /// it where the truncated tail drops to rounding level, within
  /// [0.8, pi/2 - guard].
  double base_limit = 0.5 * 3.14159265358979323846 - kSeriesGuard;
};

PantographSolution make_solution(PantographSeries series, double max_theta, int jet_order = 12);

/// Number of doublings needed to bring theta into the base interval.
int doubling_depth(const PantographSolution& sol, double theta);

/// R and its first `order` derivatives at theta >= 0 (series on the base
/// interval, doubling beyond). Needs order + depth <= jet_order, otherwise
/// ErrorCode::depth.
std::vector<double> continue_jet(const PantographSolution& sol, double theta, int order);

/// (R, R') at theta.
std::pair<double, double> continue_R(const PantographSolution& sol, double theta);

/// The continued solution as a curve on [0, max_theta] with analytic R', R''.
InclinationCurve solution_curve(const PantographSolution& sol);

/// sup |sin R' + 3 cos R - 4 a R(2 theta)| on the grid.
double pantograph_residual(const PantographSolution& sol, const AngleInterval& interval);

/// sup |tan Q' - 8 a Q(2 theta) + 4 Q| on the grid (2 theta may leave the
/// base interval; Q there is R / sin).
double auxiliary_residual(const PantographSolution& sol, const AngleInterval& interval);

/// Reflection caustic point of the solution mirror, r + (R sin / 2)(cos 2t, sin 2t).
/// Finite at cusps of the mirror, where it coincides with r.
PlanePoint reflection_caustic_point(PlanePoint mirror_point, double theta, double R);

struct ZeroDeviation {
  int multiple = 0;     // n for n pi
  double zero = 0.0;    // located zero of R
  double deviation = 0.0;
};

struct MirrorReport {
  std::vector<ZeroDeviation> zeros;
  double max_zero_deviation = 0.0;

  std::vector<double> cusp_thetas;             // 0, pi/2, pi, 2 pi, 4 pi inside the interval
  std::vector<PlanePoint> mirror_cusps;        // mirror points at those angles
  std::vector<PlanePoint> caustic_cusps;       // caustic points at those angles
  double collinearity = 0.0;                   // max line distance / spread

  /// Mirror points at the actual cusps: theta = 0 (when sampled) and the
  /// located zeros of R. Their line residual is what separates the cycloid
  /// from other pantograph mirrors; the fixed-angle residual above stays at
  /// rounding level for every solution.
  std::vector<PlanePoint> zero_cusps;
  double zero_collinearity = 0.0;

  double rho_lo = 0.3, rho_hi = 0.0;           // sub-interval for the arc ratio
  double rho_min = 0.0, rho_max = 0.0;         // of |R(t + pi) / R(t)|

  std::vector<std::pair<double, double>> q_growth;  // (pi - t, |Q(t)|) approaching pi
  bool q_pole_suspected = false;

  bool mirror_vertical = false;
  bool caustic_vertical = false;
  double blocked_fraction = 0.0;

  /// sup of the Hausdorff-style distance between c(t)/a and r(2t), over
  /// the first half of the interval.
  double self_similarity = 0.0;

  std::vector<FrameSample> mirror;          // reconstructed polyline
  std::vector<PlanePoint> caustic;          // caustic at the same angles

  /// Human-readable report followed by a key=value block.
  std::string to_text() const;
};

MirrorReport mirror_report(const PantographSolution& sol, const AngleInterval& interval);

/// R = A / sin^3(theta) on (0, pi) with poles at 0 and pi.
InclinationCurve parabola_mirror(double A);

/// Point (-A / (2 sin^2 t), -A cot t), the anchor that puts the parabola
/// in the form y^2 + 2 A x + A^2 = 0 with focus (-A, 0).
PlanePoint parabola_anchor(double A, double theta);

}  // namespace caustics
