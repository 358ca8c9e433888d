#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace caustics {

using Rational = boost::multiprecision::cpp_rational;

/// Branch k of the Lambert W function: the solution of w e^w = z on the
/// standard branch-cut convention (cuts along the negative real axis; W_0
/// and W_-1 are real on [-1/e, inf) and [-1/e, 0) respectively). Branch
/// point series near -1/e, logarithmic asymptotics elsewhere, then Halley.
/// Throws ErrorCode::pole for z = 0 on k != 0 and ErrorCode::numeric when
/// the iteration stalls.
std::complex<double> lambert_w(int branch, std::complex<double> z);

/// Real-argument convenience; only valid where the branch is real.
double lambert_w_real(int branch, double x);

/// Taylor coefficients of tan: tan(x) = sum_n tau[n] x^(2n+1), computed by
/// dividing the sine series by the cosine series. Up to n_max = 30 the
/// division runs in exact rationals and each value is rounded once.
std::vector<double> tan_coeffs(int n_max);

/// Same division carried out in double precision throughout.
std::vector<double> tan_coeffs_float(int n_max);

/// Exact tau[0..n_max].
std::vector<Rational> tan_coeffs_exact(int n_max);

/// Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(int n);

/// zeta(s) for an even s >= 2 from the Bernoulli closed form.
double zeta_even(int s);

}  // namespace caustics
