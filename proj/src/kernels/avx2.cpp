#include <cmath>
#include <limits>

#include "caustics/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CAUSTICS_X86 1
#define CAUSTICS_AVX2 __attribute__((target("avx2")))
#else
#define CAUSTICS_X86 0
#endif

namespace caustics::kernels::avx2 {

#if CAUSTICS_X86

namespace {

CAUSTICS_AVX2 inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

CAUSTICS_AVX2 inline double hmin(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  double best = lanes[0];
  for (int k = 1; k < 4; ++k) best = lanes[k] < best ? lanes[k] : best;
  return best;
}

}  // namespace

CAUSTICS_AVX2 void intersect_consecutive(const RaysSoA& rays, double parallel_tol,
                                         std::span<double> out_x, std::span<double> out_y,
                                         std::span<std::uint8_t> parallel) {
  const std::size_t n = rays.size();
  if (n < 2) return;
  const std::size_t pairs = n - 1;
  const __m256d tol = _mm256_set1_pd(parallel_tol);
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  std::size_t i = 0;
  for (; i + 4 <= pairs; i += 4) {
    const __m256d bxi = _mm256_loadu_pd(&rays.base_x[i]);
    const __m256d byi = _mm256_loadu_pd(&rays.base_y[i]);
    const __m256d bxj = _mm256_loadu_pd(&rays.base_x[i + 1]);
    const __m256d byj = _mm256_loadu_pd(&rays.base_y[i + 1]);
    const __m256d dxi = _mm256_loadu_pd(&rays.dir_x[i]);
    const __m256d dyi = _mm256_loadu_pd(&rays.dir_y[i]);
    const __m256d dxj = _mm256_loadu_pd(&rays.dir_x[i + 1]);
    const __m256d dyj = _mm256_loadu_pd(&rays.dir_y[i + 1]);
    const __m256d px = _mm256_sub_pd(bxj, bxi);
    const __m256d py = _mm256_sub_pd(byj, byi);
    const __m256d den = _mm256_sub_pd(_mm256_mul_pd(dxi, dyj), _mm256_mul_pd(dyi, dxj));
    const __m256d num = _mm256_sub_pd(_mm256_mul_pd(px, dyj), _mm256_mul_pd(py, dxj));
    const __m256d is_par = _mm256_cmp_pd(abs_pd(den), tol, _CMP_LT_OQ);
    const __m256d t = _mm256_div_pd(num, den);
    __m256d x = _mm256_add_pd(bxi, _mm256_mul_pd(t, dxi));
    __m256d y = _mm256_add_pd(byi, _mm256_mul_pd(t, dyi));
    x = _mm256_blendv_pd(x, nan, is_par);
    y = _mm256_blendv_pd(y, nan, is_par);
    _mm256_storeu_pd(&out_x[i], x);
    _mm256_storeu_pd(&out_y[i], y);
    const int mask = _mm256_movemask_pd(is_par);
    for (int k = 0; k < 4; ++k) parallel[i + k] = static_cast<std::uint8_t>((mask >> k) & 1);
  }
  if (i < pairs) {
    const std::size_t rest = n - i;
    RaysSoA tail{rays.base_x.subspan(i, rest), rays.base_y.subspan(i, rest),
                 rays.dir_x.subspan(i, rest), rays.dir_y.subspan(i, rest)};
    scalar::intersect_consecutive(tail, parallel_tol, out_x.subspan(i), out_y.subspan(i),
                                  parallel.subspan(i));
  }
}

CAUSTICS_AVX2 void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                                           std::span<const double> ax, std::span<const double> ay,
                                           std::span<const double> bx, std::span<const double> by,
                                           std::span<double> out) {
  const std::size_t m = ax.size();
  const std::size_t body = m - m % 4;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t q = 0; q < qx.size(); ++q) {
    const __m256d vqx = _mm256_set1_pd(qx[q]);
    const __m256d vqy = _mm256_set1_pd(qy[q]);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < body; j += 4) {
      const __m256d vax = _mm256_loadu_pd(&ax[j]);
      const __m256d vay = _mm256_loadu_pd(&ay[j]);
      const __m256d abx = _mm256_sub_pd(_mm256_loadu_pd(&bx[j]), vax);
      const __m256d aby = _mm256_sub_pd(_mm256_loadu_pd(&by[j]), vay);
      const __m256d aqx = _mm256_sub_pd(vqx, vax);
      const __m256d aqy = _mm256_sub_pd(vqy, vay);
      const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(abx, abx), _mm256_mul_pd(aby, aby));
      const __m256d proj = _mm256_add_pd(_mm256_mul_pd(aqx, abx), _mm256_mul_pd(aqy, aby));
      const __m256d has_len = _mm256_cmp_pd(len2, zero, _CMP_GT_OQ);
      __m256d t = _mm256_blendv_pd(zero, _mm256_div_pd(proj, len2), has_len);
      t = _mm256_blendv_pd(t, zero, _mm256_cmp_pd(t, zero, _CMP_LT_OQ));
      t = _mm256_blendv_pd(t, one, _mm256_cmp_pd(t, one, _CMP_GT_OQ));
      const __m256d dx = _mm256_sub_pd(aqx, _mm256_mul_pd(t, abx));
      const __m256d dy = _mm256_sub_pd(aqy, _mm256_mul_pd(t, aby));
      const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      best = _mm256_blendv_pd(best, d2, _mm256_cmp_pd(d2, best, _CMP_LT_OQ));
    }
    double b = hmin(best);
    if (body < m) {
      double tail = 0.0;
      scalar::min_sq_dist_to_segments(qx.subspan(q, 1), qy.subspan(q, 1), ax.subspan(body),
                                      ay.subspan(body), bx.subspan(body), by.subspan(body),
                                      std::span<double>(&tail, 1));
      b = tail < b ? tail : b;
    }
    out[q] = b;
  }
}

CAUSTICS_AVX2 void horner(std::span<const double> coeffs, std::span<const double> x,
                          std::span<double> out) {
  const std::size_t n = coeffs.size();
  if (n == 0) {
    scalar::horner(coeffs, x, out);
    return;
  }
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256d vx = _mm256_loadu_pd(&x[i]);
    __m256d acc = _mm256_set1_pd(coeffs[n - 1]);
    for (std::size_t j = n - 1; j-- > 0;) {
      acc = _mm256_add_pd(_mm256_mul_pd(acc, vx), _mm256_set1_pd(coeffs[j]));
    }
    _mm256_storeu_pd(&out[i], acc);
  }
  if (i < x.size()) scalar::horner(coeffs, x.subspan(i), out.subspan(i));
}

#else  // no x86: AVX2 entry points alias the scalar reference

void intersect_consecutive(const RaysSoA& rays, double parallel_tol, std::span<double> out_x,
                           std::span<double> out_y, std::span<std::uint8_t> parallel) {
  scalar::intersect_consecutive(rays, parallel_tol, out_x, out_y, parallel);
}
void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                             std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::span<double> out) {
  scalar::min_sq_dist_to_segments(qx, qy, ax, ay, bx, by, out);
}
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  scalar::horner(coeffs, x, out);
}

#endif

}  // namespace caustics::kernels::avx2
