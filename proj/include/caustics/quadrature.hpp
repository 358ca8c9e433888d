#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "caustics/error.hpp"

namespace caustics {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

namespace detail {

inline constexpr double kEps = 2.220446049250313e-16;

// 8-point Gauss-Legendre rule on [-1, 1]; nodes come in +/- pairs.
inline constexpr std::array<double, 4> kGaussNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

// fmax tracks the largest |f| seen so far; it sets the rounding floor.
template <std::size_t D, class F>
std::array<double, D> gauss8(F& f, double a, double b, double& fmax) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::array<double, D> sum{};
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double dx = half * kGaussNodes[i];
    const std::array<double, D> lo = f(mid - dx);
    const std::array<double, D> hi = f(mid + dx);
    for (std::size_t d = 0; d < D; ++d) {
      if (!std::isfinite(lo[d]) || !std::isfinite(hi[d])) {
        fail(ErrorCode::evaluation,
             "integrand is not finite near theta = " + std::to_string(mid));
      }
      fmax = std::fmax(fmax, std::fmax(std::fabs(lo[d]), std::fabs(hi[d])));
      sum[d] += kGaussWeights[i] * (lo[d] + hi[d]);
    }
  }
  for (auto& s : sum) s *= half;
  return sum;
}

template <std::size_t D, class F>
std::array<double, D> adaptive(F& f, double a, double b,
                               const std::array<double, D>& whole, double tol,
                               int depth, const QuadratureOptions& opts, double& fmax) {
  const double m = 0.5 * (a + b);
  const auto left = gauss8<D>(f, a, m, fmax);
  const auto right = gauss8<D>(f, m, b, fmax);
  std::array<double, D> both{};
  double err = 0.0;
  double scale = 0.0;
  for (std::size_t d = 0; d < D; ++d) {
    both[d] = left[d] + right[d];
    err = std::fmax(err, std::fabs(both[d] - whole[d]));
    scale = std::fmax(scale, std::fabs(both[d]));
  }
  // Differences at the rounding level cannot be refined away. The integrand
  // may carry absolute noise of order eps * max|f| even where it is small
  // (a function built by recursion near its zeros), hence the second floor.
  if (err <= tol || err <= 4e-16 * scale || err <= 256.0 * kEps * fmax * (b - a)) return both;
  if (depth >= opts.max_depth) {
    fail(ErrorCode::numeric, "adaptive quadrature did not converge on [" +
                                 std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const auto l = adaptive<D>(f, a, m, left, 0.5 * tol, depth + 1, opts, fmax);
  const auto r = adaptive<D>(f, m, b, right, 0.5 * tol, depth + 1, opts, fmax);
  for (std::size_t d = 0; d < D; ++d) both[d] = l[d] + r[d];
  return both;
}

}  // namespace detail

/// Integrates a vector-valued function over [a, b] with composite
/// Gauss-Legendre panels, splitting until two halves agree with the whole
/// panel to `abs_tol`.
template <std::size_t D, class F>
std::array<double, D> integrate(F&& f, double a, double b,
                                const QuadratureOptions& opts = {}) {
  if (a == b) return {};
  double fmax = 0.0;
  const auto whole = detail::gauss8<D>(f, a, b, fmax);
  return detail::adaptive<D>(f, a, b, whole, opts.abs_tol, 0, opts, fmax);
}

}  // namespace caustics
