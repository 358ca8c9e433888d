#include <cmath>
#include <limits>

#include "caustics/kernels.hpp"

namespace caustics::kernels::scalar {

void intersect_consecutive(const RaysSoA& rays, double parallel_tol, std::span<double> out_x,
                           std::span<double> out_y, std::span<std::uint8_t> parallel) {
  const std::size_t n = rays.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dxi = rays.dir_x[i], dyi = rays.dir_y[i];
    const double dxj = rays.dir_x[i + 1], dyj = rays.dir_y[i + 1];
    const double px = rays.base_x[i + 1] - rays.base_x[i];
    const double py = rays.base_y[i + 1] - rays.base_y[i];
    const double den = dxi * dyj - dyi * dxj;
    const double num = px * dyj - py * dxj;
    if (std::fabs(den) < parallel_tol) {
      out_x[i] = nan;
      out_y[i] = nan;
      parallel[i] = 1;
      continue;
    }
    const double t = num / den;
    out_x[i] = rays.base_x[i] + t * dxi;
    out_y[i] = rays.base_y[i] + t * dyi;
    parallel[i] = 0;
  }
}

void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                             std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::span<double> out) {
  const std::size_t m = ax.size();
  for (std::size_t q = 0; q < qx.size(); ++q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      const double abx = bx[j] - ax[j], aby = by[j] - ay[j];
      const double aqx = qx[q] - ax[j], aqy = qy[q] - ay[j];
      const double len2 = abx * abx + aby * aby;
      const double proj = aqx * abx + aqy * aby;
      double t = len2 > 0.0 ? proj / len2 : 0.0;
      t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
      const double dx = aqx - t * abx;
      const double dy = aqy - t * aby;
      const double d2 = dx * dx + dy * dy;
      best = d2 < best ? d2 : best;
    }
    out[q] = best;
  }
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (n == 0) {
      out[i] = 0.0;
      continue;
    }
    double acc = coeffs[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) acc = acc * x[i] + coeffs[j];
    out[i] = acc;
  }
}

}  // namespace caustics::kernels::scalar
