#include "caustics/pantograph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "caustics/csv.hpp"
#include "caustics/error.hpp"
#include "caustics/kernels.hpp"
#include "caustics/oracle.hpp"

namespace caustics {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) { return csv::format(v); }

void check_k(int k) {
  if (k == -4) {
    fail(ErrorCode::domain, "k = -4 (a = 0) is the parabola; use parabola_mirror instead");
  }
  if (k < -4) fail(ErrorCode::domain, "k must be >= -3, got " + std::to_string(k));
}

// Falling factorial n (n-1) ... (n-j+1).
double falling(int n, int j) {
  double f = 1.0;
  for (int i = 0; i < j; ++i) f *= static_cast<double>(n - i);
  return f;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return b;
}

// d^m/du^m of sin and cos.
double sin_deriv(double s, double c, int m) {
  switch (m & 3) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
  }
}
double cos_deriv(double s, double c, int m) {
  switch (m & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

// Derivatives 0..order of sin(t)/t from its Taylor series.
std::vector<double> sinc_jet(double t, int order) {
  std::vector<double> out(order + 1, 0.0);
  double fact = 1.0;  // (2m+1)!
  for (int m = 0; m <= 60; ++m) {
    if (m > 0) fact *= static_cast<double>((2 * m) * (2 * m + 1));
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for (int j = 0; j <= order && j <= 2 * m; ++j) {
      out[j] += sign * falling(2 * m, j) * std::pow(t, 2 * m - j) / fact;
    }
  }
  return out;
}

double base_limit(double guard) { return 0.5 * kPi - guard; }

std::vector<double> recurse_float(int k, int N, double a, double a_k, std::optional<double> secondary,
                                  std::vector<double>* denominators) {
  const std::vector<double> tau = tan_coeffs((N - k) / 2 + 1);
  std::vector<double> c(N - k + 1, 0.0);
  if (denominators) denominators->assign(N - k + 1, 0.0);
  c[0] = a_k;
  for (int n = k + 1; n <= N; ++n) {
    const double den = std::ldexp(a, n + 3) - n - 4;
    if (denominators) (*denominators)[n - k] = den;
    if (std::fabs(den) < 1e-12) {
      if (k == -3 && n == -2 && secondary) {
        c[n - k] = *secondary;
        continue;
      }
      fail(ErrorCode::resonance, "denominator vanishes at n = " + std::to_string(n) +
                                     " (k = -3 needs the secondary coefficient a_{-2})");
    }
    double sum = 0.0;
    for (int i = 1; n - 2 * i >= k; ++i) sum += tau[i] * (n - 2 * i) * c[n - 2 * i - k];
    c[n - k] = sum / den;
  }
  return c;
}

// Smallest n0 from which (pi^2/3) sum |n+1-2i| / den(n+1) <= 1 holds for
// every later n (checked over a long window; the denominator grows like 2^n).
int bound_start(int k, double a) {
  const double A = kPi * kPi / 3.0;
  auto ratio = [&](int n) {
    double s = 0.0;
    for (int i = 1; n + 1 - 2 * i >= k; ++i) s += std::fabs(static_cast<double>(n + 1 - 2 * i));
    const double den = std::ldexp(a, n + 4) - n - 5;
    return A * s / den;
  };
  int n0 = k + 2;
  for (int n = k + 2; n < k + 2 + 600; ++n) {
    if (!(ratio(n) <= 1.0)) n0 = n + 1;
  }
  return n0;
}

}  // namespace

double similarity_factor(int k) { return std::ldexp(static_cast<double>(k + 4), -(k + 3)); }

Rational similarity_factor_exact(int k) {
  Rational r(k + 4);
  const int e = k + 3;
  boost::multiprecision::cpp_int p = 1;
  p <<= std::abs(e);
  return e >= 0 ? r / Rational(p) : r * Rational(p);
}

double PantographSeries::coeff(int n) const {
  if (n < k || n > order) return 0.0;
  return coeffs[static_cast<std::size_t>(n - k)];
}

PantographSeries solve_series(int k, int N, double a_k, std::optional<double> secondary) {
  check_k(k);
  if (N <= k) fail(ErrorCode::domain, "truncation order N must exceed k");
  if (!(a_k != 0.0) || !std::isfinite(a_k)) fail(ErrorCode::domain, "a_k must be finite and nonzero");
  if (secondary && k != -3) fail(ErrorCode::domain, "a secondary coefficient is only free for k = -3");
  if (secondary && !std::isfinite(*secondary)) fail(ErrorCode::domain, "secondary coefficient must be finite");

  PantographSeries s;
  s.k = k;
  s.factor_a = similarity_factor(k);
  s.order = N;
  s.secondary = secondary;
  s.coeffs = recurse_float(k, N, s.factor_a, a_k, secondary, &s.denominators);

  s.bound_N0 = bound_start(k, s.factor_a);
  const int reach = std::max(N, s.bound_N0);
  const std::vector<double> ext =
      reach > N ? recurse_float(k, reach, s.factor_a, a_k, secondary, nullptr) : s.coeffs;
  double M = 0.0;
  for (int n = k; n <= s.bound_N0; ++n) {
    M = std::max(M, std::fabs(ext[n - k]) * std::pow(0.5 * kPi, n));
  }
  s.bound_M = M;
  return s;
}

ExactPantographSeries solve_series_exact(int k, int N, const Rational& a_k, std::optional<Rational> secondary) {
  check_k(k);
  if (N <= k) fail(ErrorCode::domain, "truncation order N must exceed k");
  if (a_k == 0) fail(ErrorCode::domain, "a_k must be nonzero");
  if (secondary && k != -3) fail(ErrorCode::domain, "a secondary coefficient is only free for k = -3");
  ExactPantographSeries s;
  s.k = k;
  s.factor_a = similarity_factor_exact(k);
  const std::vector<Rational> tau = tan_coeffs_exact((N - k) / 2 + 1);
  s.coeffs.assign(N - k + 1, Rational(0));
  s.coeffs[0] = a_k;
  for (int n = k + 1; n <= N; ++n) {
    const int e = n + 3;
    boost::multiprecision::cpp_int p = 1;
    p <<= std::abs(e);
    const Rational scaled = e >= 0 ? s.factor_a * Rational(p) : s.factor_a / Rational(p);
    const Rational den = scaled - n - 4;
    if (den == 0) {
      if (k == -3 && n == -2 && secondary) {
        s.coeffs[n - k] = *secondary;
        continue;
      }
      fail(ErrorCode::resonance, "denominator vanishes at n = " + std::to_string(n));
    }
    Rational sum = 0;
    for (int i = 1; n - 2 * i >= k; ++i) sum += tau[i] * (n - 2 * i) * s.coeffs[n - 2 * i - k];
    s.coeffs[n - k] = sum / den;
  }
  return s;
}

std::vector<double> eval_Q_jet(const PantographSeries& series, double theta, int order, double guard) {
  if (!(std::fabs(theta) < base_limit(guard))) {
    fail(ErrorCode::domain, "theta = " + fmt(theta) + " is outside the series disk |theta| < pi/2 - " +
                                fmt(guard));
  }
  if (theta == 0.0 && series.k < 0) fail(ErrorCode::domain, "Q has a pole at theta = 0 for k < 0");
  std::vector<double> out(order + 1, 0.0);
  for (int n = series.order; n >= series.k; --n) {
    const double an = series.coeff(n);
    if (an == 0.0) continue;
    for (int j = 0; j <= order; ++j) {
      const double f = falling(n, j);
      if (f != 0.0) out[j] += an * f * std::pow(theta, n - j);
    }
  }
  return out;
}

double eval_Q(const PantographSeries& series, double theta, double guard) {
  return eval_Q_jet(series, theta, 0, guard)[0];
}

std::vector<double> eval_Q_many(const PantographSeries& series, std::span<const double> thetas, double guard) {
  std::vector<double> out(thetas.size());
  if (series.k < 0) {
    for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = eval_Q(series, thetas[i], guard);
    return out;
  }
  for (double t : thetas) {
    if (!(std::fabs(t) < base_limit(guard))) {
      fail(ErrorCode::domain, "theta = " + fmt(t) + " is outside the series disk");
    }
  }
  std::vector<double> poly(series.order + 1, 0.0);
  for (int n = series.k; n <= series.order; ++n) poly[n] = series.coeff(n);
  kernels::horner(poly, thetas, out);
  return out;
}

std::vector<double> eval_R_base(const PantographSeries& series, double theta, int order, double guard) {
  if (!(std::fabs(theta) < base_limit(guard))) {
    fail(ErrorCode::domain, "theta = " + fmt(theta) + " is outside the series disk");
  }
  if (theta == 0.0 && series.k <= -2) fail(ErrorCode::domain, "R has a pole at theta = 0 for k <= -2");

  // Q without its 1/theta term, whose product with sin is the entire sinc.
  std::vector<double> q(order + 1, 0.0);
  for (int n = series.order; n >= series.k; --n) {
    const double an = series.coeff(n);
    if (an == 0.0 || n == -1) continue;
    for (int j = 0; j <= order; ++j) {
      const double f = falling(n, j);
      if (f != 0.0) q[j] += an * f * std::pow(theta, n - j);
    }
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  std::vector<double> r(order + 1, 0.0);
  for (int j = 0; j <= order; ++j) {
    double acc = 0.0;
    for (int i = 0; i <= j; ++i) acc += binom(j, i) * q[i] * sin_deriv(s, c, j - i);
    r[j] = acc;
  }
  const double am1 = series.coeff(-1);
  if (am1 != 0.0) {
    const std::vector<double> sj = sinc_jet(theta, order);
    for (int j = 0; j <= order; ++j) r[j] += am1 * sj[j];
  }
  return r;
}

PantographSolution make_solution(PantographSeries series, double max_theta, int jet_order) {
  if (!(max_theta > 0.0) || !std::isfinite(max_theta)) fail(ErrorCode::domain, "max_theta must be positive");
  if (jet_order < 1) fail(ErrorCode::domain, "jet_order must be >= 1");
  PantographSolution sol;
  sol.series = std::move(series);
  sol.max_theta = max_theta;
  sol.jet_order = jet_order;
  // Relative size of the last kept term, |a_m| t^(m-k) / |a_k|, reaches
  // rounding level at t = (eps |a_k| / |a_m|)^(1 / (m - k)).
  const double upper = base_limit(sol.guard);
  const PantographSeries& s = sol.series;
  int m = s.order;
  while (m > s.k && s.coeff(m) == 0.0) --m;
  double limit = upper;
  if (m > s.k) {
    const double eps = std::numeric_limits<double>::epsilon() * 0.5;
    limit = std::pow(eps * std::fabs(s.coeff(s.k)) / std::fabs(s.coeff(m)), 1.0 / (m - s.k));
  }
  sol.base_limit = std::clamp(limit, std::min(0.8, upper), upper);
  return sol;
}

int doubling_depth(const PantographSolution& sol, double theta) {
  const double limit = sol.base_limit;
  int d = 0;
  while (theta >= limit) {
    theta *= 0.5;
    ++d;
  }
  return d;
}

namespace {

std::vector<double> jet_rec(const PantographSolution& sol, double theta, int order) {
  if (theta < sol.base_limit) return eval_R_base(sol.series, theta, order, sol.guard);
  const double u = 0.5 * theta;
  const std::vector<double> inner = jet_rec(sol, u, order + 1);
  const double s = std::sin(u);
  const double c = std::cos(u);
  const double inv4a = 1.0 / (4.0 * sol.series.factor_a);
  std::vector<double> out(order + 1);
  for (int j = 0; j <= order; ++j) {
    double acc = 0.0;
    for (int i = 0; i <= j; ++i) {
      acc += binom(j, i) * (3.0 * cos_deriv(s, c, j - i) * inner[i] + sin_deriv(s, c, j - i) * inner[i + 1]);
    }
    out[j] = std::ldexp(acc * inv4a, -j);
  }
  return out;
}

}  // namespace

std::vector<double> continue_jet(const PantographSolution& sol, double theta, int order) {
  if (!(theta >= 0.0)) fail(ErrorCode::domain, "continuation needs theta >= 0, got " + fmt(theta));
  if (theta > sol.max_theta * (1.0 + 1e-12)) {
    fail(ErrorCode::domain, "theta = " + fmt(theta) + " exceeds max_theta = " + fmt(sol.max_theta));
  }
  const int depth = doubling_depth(sol, theta);
  if (order + depth > sol.jet_order) {
    fail(ErrorCode::depth, "theta = " + fmt(theta) + " needs " + std::to_string(depth) +
                               " doublings and a jet of order " + std::to_string(order + depth) +
                               "; raise jet_order above " + std::to_string(sol.jet_order));
  }
  return jet_rec(sol, theta, order);
}

std::pair<double, double> continue_R(const PantographSolution& sol, double theta) {
  const std::vector<double> j = continue_jet(sol, theta, 1);
  return {j[0], j[1]};
}

InclinationCurve solution_curve(const PantographSolution& sol) {
  std::vector<double> poles;
  if (sol.series.k <= -2) poles.push_back(0.0);
  const std::string label = "pantograph_m" + std::to_string(sol.series.k + 1);
  return InclinationCurve(label, AngleInterval{0.0, sol.max_theta, 2},
                          {[sol](double t) { return continue_jet(sol, t, 0)[0]; },
                           [sol](double t) { return continue_jet(sol, t, 1)[1]; },
                           [sol](double t) { return continue_jet(sol, t, 2)[2]; }},
                          std::move(poles));
}

double pantograph_residual(const PantographSolution& sol, const AngleInterval& interval) {
  interval.validate();
  const double a = sol.series.factor_a;
  double worst = 0.0;
  for (double t : interval.nodes()) {
    const auto [R, R1] = continue_R(sol, t);
    const double R2 = continue_jet(sol, 2.0 * t, 0)[0];
    worst = std::max(worst, std::fabs(std::sin(t) * R1 + 3.0 * std::cos(t) * R - 4.0 * a * R2));
  }
  return worst;
}

double auxiliary_residual(const PantographSolution& sol, const AngleInterval& interval) {
  interval.validate();
  const double a = sol.series.factor_a;
  double worst = 0.0;
  for (double t : interval.nodes()) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const auto [R, R1] = continue_R(sol, t);
    const double Q = R / s;
    const double Q1 = (R1 * s - R * c) / (s * s);
    const double Q2 = continue_jet(sol, 2.0 * t, 0)[0] / std::sin(2.0 * t);
    worst = std::max(worst, std::fabs(s / c * Q1 - 8.0 * a * Q2 + 4.0 * Q));
  }
  return worst;
}

PlanePoint reflection_caustic_point(PlanePoint mirror_point, double theta, double R) {
  return mirror_point + (0.5 * R * std::sin(theta)) * unit_at(2.0 * theta);
}

namespace {

std::optional<double> zero_near(const InclinationCurve& curve, double center, double lo, double hi) {
  auto f = [&](double t) { return curve.radius(t); };
  const double f0 = f(center);
  if (f0 == 0.0) return center;
  auto bisect = [&](double x0, double fx0, double x1) {
    for (int it = 0; it < 200 && std::fabs(x1 - x0) > 1e-12; ++it) {
      const double m = 0.5 * (x0 + x1);
      const double fm = f(m);
      if (fm == 0.0) return m;
      if ((fm < 0.0) == (fx0 < 0.0)) {
        x0 = m;
        fx0 = fm;
      } else {
        x1 = m;
      }
    }
    return 0.5 * (x0 + x1);
  };
  double prev = 0.0;
  for (double d = 1e-6; d <= 0.5 * kPi; d *= 2.0) {
    for (int side : {1, -1}) {
      const double x = center + side * d;
      if (x < lo || x > hi) continue;
      const double fx = f(x);
      if (fx == 0.0) return x;
      if ((fx < 0.0) != (f0 < 0.0)) {
        const double inner = center + side * prev;
        return bisect(inner, f(inner), x);
      }
    }
    prev = d;
  }
  return std::nullopt;
}

double line_residual(std::span<const PlanePoint> pts) {
  if (pts.size() < 3) return 0.0;
  Vec2 mean{};
  for (const auto& p : pts) mean += p;
  mean = mean / static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : pts) {
    const Vec2 d = p - mean;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Vec2 dir = unit_at(angle);
  double spread = 0.0;
  double off = 0.0;
  for (const auto& p : pts) {
    off = std::max(off, std::fabs(cross(dir, p - mean)));
    for (const auto& q : pts) spread = std::max(spread, distance(p, q));
  }
  return spread > 0.0 ? off / spread : 0.0;
}

}  // namespace

MirrorReport mirror_report(const PantographSolution& sol, const AngleInterval& interval) {
  interval.validate();
  const InclinationCurve curve = solution_curve(sol);
  const double a = sol.series.factor_a;
  ReconstructOptions opts;
  opts.quadrature.abs_tol = 1e-13;

  MirrorReport rep;
  rep.mirror = reconstruct(curve, interval, opts);
  rep.caustic.reserve(rep.mirror.size());
  for (const auto& f : rep.mirror) rep.caustic.push_back(reflection_caustic_point(f.position, f.theta, f.radius));

  const double lo = rep.mirror.front().theta;
  const double hi = rep.mirror.back().theta;
  for (int n = 1; n * kPi < hi; ++n) {
    const double center = n * kPi;
    if (center <= lo) continue;
    const auto z = zero_near(curve, center, lo, hi);
    if (!z) continue;
    rep.zeros.push_back({n, *z, *z - center});
    rep.max_zero_deviation = std::max(rep.max_zero_deviation, std::fabs(*z - center));
  }

  std::vector<double> marks{lo};
  for (double t : {0.0, 0.5 * kPi, kPi, 2.0 * kPi, 4.0 * kPi}) {
    if (t >= lo && t <= hi) {
      rep.cusp_thetas.push_back(t);
      marks.push_back(t);
    }
  }
  const std::vector<PlanePoint> at = positions_at(curve, marks, opts);
  for (std::size_t i = 0; i < rep.cusp_thetas.size(); ++i) {
    const double t = rep.cusp_thetas[i];
    rep.mirror_cusps.push_back(at[i + 1]);
    rep.caustic_cusps.push_back(reflection_caustic_point(at[i + 1], t, curve.radius(t)));
  }
  rep.collinearity = line_residual(rep.caustic_cusps);

  std::vector<double> zero_thetas{lo};
  if (lo == 0.0) zero_thetas.push_back(0.0);
  for (const auto& z : rep.zeros) zero_thetas.push_back(z.zero);
  const std::vector<PlanePoint> zp = positions_at(curve, zero_thetas, opts);
  rep.zero_cusps.assign(zp.begin() + 1, zp.end());
  rep.zero_collinearity = line_residual(rep.zero_cusps);

  rep.rho_lo = 0.3;
  rep.rho_hi = kPi - 0.3;
  if (rep.rho_hi + kPi <= hi) {
    const AngleInterval sub{rep.rho_lo, rep.rho_hi, 401};
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (double t : sub.nodes()) {
      const double r = std::fabs(curve.radius(t + kPi) / curve.radius(t));
      mn = std::min(mn, r);
      mx = std::max(mx, r);
    }
    rep.rho_min = mn;
    rep.rho_max = mx;
  } else {
    rep.rho_min = rep.rho_max = std::numeric_limits<double>::quiet_NaN();
  }

  if (hi >= kPi) {
    for (int j = 1; j <= 6; ++j) {
      const double eps = std::pow(10.0, -j);
      const double t = kPi - eps;
      rep.q_growth.emplace_back(eps, std::fabs(curve.radius(t) / std::sin(t)));
    }
    rep.q_pole_suspected = rep.q_growth.back().second > 1e3 * rep.q_growth.front().second;
  }

  const std::vector<PlanePoint> mirror_pts = positions_of(rep.mirror);
  rep.mirror_vertical = verticality_check(mirror_pts).vertical;
  rep.caustic_vertical = verticality_check(rep.caustic).vertical;
  rep.blocked_fraction = occlusion_check(mirror_pts).blocked_fraction;

  if (lo == 0.0) {
    std::vector<double> halves;
    std::vector<double> doubled;
    for (const auto& f : rep.mirror) {
      if (2.0 * f.theta > hi) break;
      halves.push_back(f.theta);
      doubled.push_back(2.0 * f.theta);
    }
    const std::vector<PlanePoint> target = positions_at(curve, doubled, opts);
    double worst = 0.0;
    for (std::size_t i = 0; i < halves.size(); ++i) {
      worst = std::max(worst, distance(rep.caustic[i] / a, target[i]));
    }
    rep.self_similarity = worst;
  } else {
    rep.self_similarity = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

std::string MirrorReport::to_text() const {
  std::ostringstream out;
  out << "zeros of R near multiples of pi:\n";
  for (const auto& z : zeros) {
    out << "  n=" << z.multiple << "  zero=" << fmt(z.zero) << "  deviation=" << fmt(z.deviation) << "\n";
  }
  out << "caustic cusps (collinearity " << fmt(collinearity) << "):\n";
  for (std::size_t i = 0; i < cusp_thetas.size(); ++i) {
    out << "  theta=" << fmt(cusp_thetas[i]) << "  mirror=(" << fmt(mirror_cusps[i].x) << ", "
        << fmt(mirror_cusps[i].y) << ")  caustic=(" << fmt(caustic_cusps[i].x) << ", "
        << fmt(caustic_cusps[i].y) << ")\n";
  }
  out << "mirror cusps at zeros of R (collinearity " << fmt(zero_collinearity) << "):\n";
  for (const auto& p : zero_cusps) out << "  (" << fmt(p.x) << ", " << fmt(p.y) << ")\n";
  out << "arc ratio |R(t+pi)/R(t)| on [" << fmt(rho_lo) << ", " << fmt(rho_hi) << "]: min=" << fmt(rho_min)
      << " max=" << fmt(rho_max) << "\n";
  out << "|Q| approaching pi:\n";
  for (const auto& [eps, q] : q_growth) out << "  pi-" << fmt(eps) << "  |Q|=" << fmt(q) << "\n";
  out << "mirror vertical: " << (mirror_vertical ? "yes" : "no")
      << ", caustic vertical: " << (caustic_vertical ? "yes" : "no")
      << ", blocked fraction: " << fmt(blocked_fraction) << "\n";
  out << "caustic/a vs mirror(2t) max distance: " << fmt(self_similarity) << "\n";
  out << "[report]\n";
  out << "zero_count=" << zeros.size() << "\n";
  out << "max_zero_deviation=" << fmt(max_zero_deviation) << "\n";
  out << "collinearity=" << fmt(collinearity) << "\n";
  out << "zero_collinearity=" << fmt(zero_collinearity) << "\n";
  out << "rho_min=" << fmt(rho_min) << "\n";
  out << "rho_max=" << fmt(rho_max) << "\n";
  out << "q_pole_suspected=" << (q_pole_suspected ? 1 : 0) << "\n";
  out << "mirror_vertical=" << (mirror_vertical ? 1 : 0) << "\n";
  out << "caustic_vertical=" << (caustic_vertical ? 1 : 0) << "\n";
  out << "blocked_fraction=" << fmt(blocked_fraction) << "\n";
  out << "self_similarity=" << fmt(self_similarity) << "\n";
  return out.str();
}

InclinationCurve parabola_mirror(double A) {
  if (A == 0.0 || !std::isfinite(A)) fail(ErrorCode::degenerate_curve, "parabola needs A != 0");
  return InclinationCurve(
      "parabola", AngleInterval{0.0, kPi, 2},
      {[A](double t) {
         const double s = std::sin(t);
         return A / (s * s * s);
       },
       [A](double t) {
         const double s = std::sin(t);
         return -3.0 * A * std::cos(t) / (s * s * s * s);
       },
       [A](double t) {
         const double s = std::sin(t);
         const double c = std::cos(t);
         return 3.0 * A / (s * s * s) + 12.0 * A * c * c / (s * s * s * s * s);
       }},
      {0.0, kPi});
}

PlanePoint parabola_anchor(double A, double theta) {
  const double s = std::sin(theta);
  return {-A / (2.0 * s * s), -A * std::cos(theta) / s};
}

}  // namespace caustics
