#include <atomic>

#include "caustics/error.hpp"
#include "caustics/kernels.hpp"

namespace caustics::kernels {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect_avx2() ? Isa::avx2 : Isa::scalar};
  return isa;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::shape, what);
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

Isa force_isa(Isa isa) {
  const Isa chosen = (isa == Isa::avx2 && !avx2_available()) ? Isa::scalar : isa;
  selected().store(chosen, std::memory_order_relaxed);
  return chosen;
}

void intersect_consecutive(const RaysSoA& rays, double parallel_tol, std::span<double> out_x,
                           std::span<double> out_y, std::span<std::uint8_t> parallel) {
  const std::size_t n = rays.size();
  require(rays.base_y.size() == n && rays.dir_x.size() == n && rays.dir_y.size() == n,
          "ray arrays differ in length");
  const std::size_t pairs = n < 2 ? 0 : n - 1;
  require(out_x.size() >= pairs && out_y.size() >= pairs && parallel.size() >= pairs,
          "intersection outputs too short");
  if (active_isa() == Isa::avx2) {
    avx2::intersect_consecutive(rays, parallel_tol, out_x, out_y, parallel);
  } else {
    scalar::intersect_consecutive(rays, parallel_tol, out_x, out_y, parallel);
  }
}

void min_sq_dist_to_segments(std::span<const double> qx, std::span<const double> qy,
                             std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::span<double> out) {
  require(qx.size() == qy.size() && out.size() >= qx.size(), "query arrays differ in length");
  require(ay.size() == ax.size() && bx.size() == ax.size() && by.size() == ax.size(),
          "segment arrays differ in length");
  if (active_isa() == Isa::avx2) {
    avx2::min_sq_dist_to_segments(qx, qy, ax, ay, bx, by, out);
  } else {
    scalar::min_sq_dist_to_segments(qx, qy, ax, ay, bx, by, out);
  }
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  require(out.size() >= x.size(), "horner output too short");
  if (active_isa() == Isa::avx2) {
    avx2::horner(coeffs, x, out);
  } else {
    scalar::horner(coeffs, x, out);
  }
}

}  // namespace caustics::kernels
