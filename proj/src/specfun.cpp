#include "caustics/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "caustics/csv.hpp"
#include "caustics/error.hpp"

namespace caustics {

namespace {

using cd = std::complex<double>;

constexpr double kInvE = 0.36787944117144232159552377016146;  // 1/e
constexpr double kE = std::numbers::e;
constexpr int kMaxHalley = 100;

// -1 + p - p^2/3 + 11 p^3 / 72 with p = +-sqrt(2 (e z + 1)).
template <class T>
T branch_point_series(T p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

template <class T>
bool halley(T& w, T z) {
  for (int it = 0; it < kMaxHalley; ++it) {
    const T ew = std::exp(w);
    const T f = w * ew - z;
    if (f == T(0)) return true;
    const T wp1 = w + 1.0;
    if (wp1 == T(0)) return true;  // exactly at the branch point
    const T dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= dw;
    if (std::abs(dw) <= 4e-16 * (1.0 + std::abs(w))) return true;
  }
  return false;
}

double real_initial_guess(int branch, double x) {
  if (branch == 0) {
    if (x < -0.25) return branch_point_series(std::sqrt(std::fmax(0.0, 2.0 * (kE * x + 1.0))));
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  if (x < -0.25) return branch_point_series(-std::sqrt(std::fmax(0.0, 2.0 * (kE * x + 1.0))));
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

cd complex_initial_guess(int branch, cd z) {
  const double y = z.imag();
  const bool near_branch_point = std::abs(z + kInvE) < 0.3;
  if (near_branch_point) {
    const cd p = std::sqrt(2.0 * (kE * z + 1.0));
    if (branch == 0) return branch_point_series(p);
    if (branch == -1 && y >= 0.0) return branch_point_series(-p);
    if (branch == 1 && y < 0.0) return branch_point_series(-p);
  }
  if (branch == 0 && std::abs(z) < 0.25) return z * (1.0 - z);
  if (branch == 0 && z.real() > -1.0 && z.real() < 2.5 && std::fabs(y) < 4.0) {
    // Linearizations of W_0 around a few anchors (upper/lower half-plane).
    if (y > 1.0) return cd(0.876, 0.645) + cd(0.118, -0.174) * (z - cd(0.75, 2.5));
    if (y > 0.25) return cd(0.505, 0.204) + cd(0.375, -0.132) * (z - cd(0.75, 0.5));
    if (y < -1.0) return cd(0.876, -0.645) + cd(0.118, 0.174) * (z - cd(0.75, -2.5));
    if (y < -0.25) return cd(0.505, -0.204) + cd(0.375, 0.132) * (z - cd(0.75, -0.5));
    if (z.real() < -0.5) {
      return y >= 0.0 ? cd(-0.318, 1.34) + cd(-0.697, -0.593) * (z + 1.0)
                      : cd(-0.318, -1.34) + cd(-0.697, 0.593) * (z + 1.0);
    }
    if (z.real() < 0.5) return z;
    return 0.2 + 0.3 * z;
  }
  // Branch k sits near log z + 2 pi i k; values on the negative real axis
  // belong to the upper side of the cut.
  cd log_z = std::log(z);
  if (y == 0.0 && z.real() < 0.0) log_z = cd(log_z.real(), std::numbers::pi);
  const cd l1 = log_z + cd(0.0, 2.0 * std::numbers::pi * branch);
  const cd l2 = std::log(l1);
  return l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
}

std::string describe(int branch, cd z) {
  return "W_" + std::to_string(branch) + "(" + csv::format(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         csv::format(std::fabs(z.imag())) + "i)";
}

}  // namespace

std::complex<double> lambert_w(int branch, std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorCode::domain, "Lambert W argument must be finite");
  }
  if (z == cd(0.0, 0.0)) {
    if (branch == 0) return {0.0, 0.0};
    fail(ErrorCode::pole, "W_" + std::to_string(branch) + " has a pole at z = 0");
  }

  if (z.imag() == 0.0) {
    const double x = z.real();
    const bool slightly_below = kE * x + 1.0 < 0.0 && kE * x + 1.0 > -8e-16;
    const bool real0 = branch == 0 && (x >= -kInvE || slightly_below);
    const bool real_m1 = branch == -1 && x < 0.0 && (x >= -kInvE || slightly_below);
    if (real0 || real_m1) {
      if (slightly_below) return {-1.0, 0.0};
      double w = real_initial_guess(branch, x);
      if (!halley(w, x)) fail(ErrorCode::numeric, "Halley iteration stalled for " + describe(branch, z));
      return {w, 0.0};
    }
  }

  cd w = complex_initial_guess(branch, z);
  if (!halley(w, z)) {
    const double rel = std::abs(w * std::exp(w) - z) / std::abs(z);
    if (!(rel < 1e-13)) {
      fail(ErrorCode::numeric, "Halley iteration stalled for " + describe(branch, z) +
                                   " (relative residual " + csv::format(rel) + ")");
    }
  }
  return w;
}

double lambert_w_real(int branch, double x) {
  const cd w = lambert_w(branch, cd(x, 0.0));
  if (w.imag() != 0.0) {
    fail(ErrorCode::branch_unavailable, "W_" + std::to_string(branch) + "(" + csv::format(x) +
                                            ") is not real");
  }
  return w.real();
}

std::vector<Rational> tan_coeffs_exact(int n_max) {
  if (n_max < 0) fail(ErrorCode::domain, "tan_coeffs needs n_max >= 0");
  std::vector<Rational> sine(n_max + 1), cosine(n_max + 1), tau(n_max + 1);
  boost::multiprecision::cpp_int fact = 1;  // (2j)!
  for (int j = 0; j <= n_max; ++j) {
    if (j > 0) fact *= (2 * j - 1) * (2 * j);
    const int sign = (j % 2 == 0) ? 1 : -1;
    cosine[j] = Rational(sign, fact);
    sine[j] = Rational(sign, fact * (2 * j + 1));
  }
  for (int n = 0; n <= n_max; ++n) {
    Rational acc = sine[n];
    for (int j = 1; j <= n; ++j) acc -= cosine[j] * tau[n - j];
    tau[n] = acc;
  }
  return tau;
}

std::vector<double> tan_coeffs_float(int n_max) {
  if (n_max < 0) fail(ErrorCode::domain, "tan_coeffs needs n_max >= 0");
  std::vector<double> sine(n_max + 1), cosine(n_max + 1), tau(n_max + 1);
  double fact = 1.0;
  for (int j = 0; j <= n_max; ++j) {
    if (j > 0) fact *= static_cast<double>((2 * j - 1) * (2 * j));
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    cosine[j] = sign / fact;
    sine[j] = sign / (fact * (2 * j + 1));
  }
  for (int n = 0; n <= n_max; ++n) {
    double acc = sine[n];
    for (int j = 1; j <= n; ++j) acc -= cosine[j] * tau[n - j];
    tau[n] = acc;
  }
  return tau;
}

std::vector<double> tan_coeffs(int n_max) {
  if (n_max < 0) fail(ErrorCode::domain, "tan_coeffs needs n_max >= 0");
  if (n_max > 30) return tan_coeffs_float(n_max);
  const auto exact = tan_coeffs_exact(n_max);
  std::vector<double> out;
  out.reserve(exact.size());
  for (const auto& q : exact) out.push_back(q.convert_to<double>());
  return out;
}

std::vector<Rational> bernoulli_numbers(int n) {
  if (n < 0) fail(ErrorCode::domain, "bernoulli_numbers needs n >= 0");
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // sum_{k<m} C(m+1, k) B_k = -(m+1) B_m
    boost::multiprecision::cpp_int binom = 1;  // C(m+1, 0)
    Rational acc = 0;
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / (m + 1);
  }
  return b;
}

double zeta_even(int s) {
  if (s < 2 || s % 2 != 0) {
    fail(ErrorCode::domain, "zeta_even needs an even argument >= 2, got " + std::to_string(s));
  }
  const auto b = bernoulli_numbers(s);
  boost::multiprecision::cpp_int fact = 1;
  for (int j = 2; j <= s; ++j) fact *= j;
  Rational ratio = b[s] / Rational(fact);
  if (ratio < 0) ratio = -ratio;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double value = ratio.convert_to<long double>() * std::pow(two_pi, s) / 2.0L;
  return static_cast<double>(value);
}

}  // namespace caustics
