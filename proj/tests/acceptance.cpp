// One PASS/FAIL line per acceptance criterion. Expected values come from
// closed forms and recomputations kept here rather than from the library.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "caustics/caustic.hpp"
#include "caustics/oracle.hpp"
#include "caustics/pantograph.hpp"
#include "caustics/skew.hpp"
#include "caustics/specfun.hpp"
#include "support.hpp"

using namespace caustics;
using test::kPi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records metric <= tol.
  void need(const char* what, double metric, double tol) {
    const bool ok = metric <= tol;
    pass = pass && ok;
    detail << " " << what << "=" << metric << (ok ? "<=" : ">") << tol << ";";
  }
  void need(const char* what, bool ok) {
    pass = pass && ok;
    detail << " " << what << (ok ? " ok" : " FAILED") << ";";
  }
  void note(const std::string& s) { detail << " [" << s << "]"; }
};

int failures = 0;

void criterion(int n, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(3);
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " threw: " << e.what();
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s  %s:%s\n", n, o.pass ? "PASS" : "FAIL", title, o.detail.str().c_str());
  std::fflush(stdout);
}

PlanePoint nephroid(double t) {
  return {0.75 * std::cos(t) - 0.25 * std::cos(3 * t), 0.75 * std::sin(t) - 0.25 * std::sin(3 * t)};
}

// Envelope of n reflected rays off the right unit semicircle against the
// closed-form nephroid, cusp disks excluded.
double semicircle_distance(int n) {
  std::vector<PlanePoint> mirror;
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) {
    const double t = -kPi / 2 + kPi * i / (n - 1);
    ts.push_back(t);
    mirror.push_back({std::cos(t), std::sin(t)});
  }
  const Envelope env = envelope_numeric(reflect_horizontal(mirror, ts));
  const double lo = env.thetas.front(), hi = env.thetas.back();
  std::vector<PlanePoint> exact;
  const int dense = 20 * n;
  for (int i = 0; i < dense; ++i) exact.push_back(nephroid(lo + (hi - lo) * i / (dense - 1)));
  const std::vector<PlanePoint> cusps{{0.0, 1.0}, {0.0, -1.0}, {0.5, 0.0}};
  return hausdorff(env.points, exact, cusps, 1e-2);
}

// tan coefficients from the zeta sum, independent of the series division.
std::vector<double> tan_from_zeta(int n_max) {
  std::vector<double> tau{1.0};
  for (int n = 1; n <= n_max; ++n) {
    const int s = 2 * n + 2;
    double z = 0.0;
    for (int j = 200000; j >= 1; --j) z += std::pow(static_cast<double>(j), -s);
    tau.push_back(2.0 * (std::pow(2.0, s) - 1.0) * z / std::pow(kPi, s));
  }
  return tau;
}

// a_n from (2^(n+3) a - 4 - n) a_n = sum_j tau_j (n - 2j) a_{n-2j}, a_k = 1.
std::vector<double> recursion_oracle(int k, int N) {
  const auto tau = tan_from_zeta((N - k) / 2 + 1);
  const double a = (k + 4.0) / std::pow(2.0, k + 3);
  std::vector<double> c(N - k + 1, 0.0);
  c[0] = 1.0;
  for (int n = k + 1; n <= N; ++n) {
    double rhs = 0.0;
    for (int j = 1; n - 2 * j >= k; ++j) rhs += tau[j] * (n - 2 * j) * c[n - 2 * j - k];
    c[n - k] = rhs / (std::pow(2.0, n + 3) * a - 4.0 - n);
  }
  return c;
}

// Invariant and residual suite shared by m = 2 and m = 3.
void pantograph_suite(Outcome& o, int k, double expected_a) {
  const PantographSeries s = solve_series(k, 30);
  o.need("a exact", s.factor_a == expected_a && similarity_factor_exact(k) == Rational(k + 4, 1 << (k + 3)));
  const auto oracle = recursion_oracle(k, 30);
  double rel = 0.0;
  bool parity = true, sign = true, bound = true;
  for (int n = k; n <= 30; ++n) {
    const double c = s.coeff(n);
    if (oracle[n - k] != 0.0) rel = std::max(rel, std::fabs(c - oracle[n - k]) / std::fabs(oracle[n - k]));
    if ((n - k) % 2) parity = parity && c == 0.0;
    else sign = sign && c > 0.0;
    bound = bound && std::fabs(c) * std::pow(kPi / 2, n) <= s.bound_M;
  }
  o.need("coeffs vs recursion oracle", rel, 1e-12);
  o.need("parity zeros", parity);
  o.need("uniform sign", sign);
  o.need("bound M", bound);

  const PantographSolution sol = make_solution(s, 4 * kPi);
  const double a = s.factor_a;
  double res = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double t = 0.01 + (2 * kPi - 0.01) * i / 3999.0;
    const auto [R, Rp] = continue_R(sol, t);
    res = std::max(res, std::fabs(std::sin(t) * Rp + 3 * std::cos(t) * R - 4 * a * continue_R(sol, 2 * t).first));
  }
  o.need("residual", res, 1e-8);
}

}  // namespace

int main() {
  std::cout.precision(3);
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "nephroid", [](Outcome& o) {
    const CausticCurve cc = caustic_curve(circle_curve(), TiltField::reflection(), {0.0, kPi, 1000});
    double r1 = 0.0, incl = 0.0;
    for (const auto& node : cc.nodes) {
      if (!node.ok()) continue;
      const CausticSample& c = *node.sample;
      r1 = std::max(r1, std::fabs(c.caustic_radius - 0.75 * std::cos(c.source_theta)));
      incl = std::max(incl, std::fabs(c.caustic_theta - 2 * c.source_theta) +
                                std::fabs(c.caustic_radius - 0.75 * std::cos(c.caustic_theta / 2)));
    }
    o.need("failed nodes", static_cast<double>(cc.failures()), 1.0);
    o.need("R1 - 3/4 cos", r1, 1e-12);
    o.need("inclination form", incl, 1e-12);
  });

  criterion(2, "ray-tracing oracle", [](Outcome& o) {
    const double d2000 = semicircle_distance(2000);
    const double d1000 = semicircle_distance(1000);
    o.need("hausdorff", d2000, 1e-3);
    o.need("halving ratio", d2000 / d1000, 0.5);
  });

  criterion(3, "cycloid mirror", [](Outcome& o) {
    const InclinationCurve c = cycloid_curve();
    o.need("similarity residual",
           similarity_residual(c, TiltField::reflection(), {0.5, 0.0, +1}, {0.0, 2 * kPi, 1000}), 1e-10);
    double direct = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = 2 * kPi * i / 999.0;
      const double r1 = 0.25 * (3 * std::cos(t) * std::sin(t) + std::sin(t) * std::cos(t));
      direct = std::max(direct, std::fabs(r1 - 0.5 * std::sin(2 * t)));
    }
    o.need("closed form", direct, 1e-15);
    const MirrorReport rep = mirror_report(make_solution(solve_series(0, 30), 4 * kPi), {0.0, 4 * kPi, 2000});
    o.need("zero deviation", rep.max_zero_deviation, 1e-10);
    o.need("rho spread", std::max(std::fabs(rep.rho_max - 1), std::fabs(rep.rho_min - 1)), 1e-10);
    o.need("collinearity", rep.collinearity, 1e-10);
    o.need("zero-cusp collinearity", rep.zero_collinearity, 1e-10);
  });

  criterion(4, "pantograph m = 2", [](Outcome& o) {
    const PantographSeries s = solve_series(1, 30);
    const double a3 = (1.0 / 3.0) / (std::pow(2.0, 6) * 5.0 / 16.0 - 4.0 - 3.0);
    o.need("a3 - 1/39", std::fabs(s.coeff(3) - a3), 1e-15);
    pantograph_suite(o, 1, 5.0 / 16.0);
    const PantographSolution sol = make_solution(s, 4 * kPi);
    double rmax = 0.0;
    for (int i = 0; i <= 4000; ++i) rmax = std::max(rmax, std::fabs(continue_R(sol, 2 * kPi * i / 4000.0).first));
    o.need("R(pi) away from 0", std::fabs(continue_R(sol, kPi).first) > 1e-3 * rmax);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 0.3 + (kPi - 0.6) * i / 1000.0;
      const double r = std::fabs(continue_R(sol, t + kPi).first / continue_R(sol, t).first);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    o.need("rho non-constant", hi - lo > 1e-3);
    const auto mirror = positions_of(reconstruct(solution_curve(sol), {0.0, 2 * kPi, 2000}));
    o.need("not vertical", !verticality_check(mirror).vertical);
  });

  criterion(5, "pantograph m = 3", [](Outcome& o) {
    pantograph_suite(o, 2, 3.0 / 16.0);
    const AngleInterval iv{0.0, 4 * kPi, 2000};
    const MirrorReport m3 = mirror_report(make_solution(solve_series(2, 30), 4 * kPi), iv);
    const MirrorReport cyc = mirror_report(make_solution(solve_series(0, 30), 4 * kPi), iv);
    // The cusps at theta = 0, pi/2, pi, 2pi, 4pi are collinear for any
    // solution, so the comparison uses the actual cusps (zeros of R).
    o.need("fixed-angle cusps collinear", m3.collinearity, 1e-10);
    o.need("zero-cusp collinearity exceeds cycloid", m3.zero_collinearity > cyc.zero_collinearity);
    char buf[96];
    std::snprintf(buf, sizeof buf, "zero-cusp collinearity %.3g vs cycloid %.3g", m3.zero_collinearity,
                  cyc.zero_collinearity);
    o.note(buf);
  });

  criterion(6, "parabola", [](Outcome& o) {
    double scatter = 0.0, implicit = 0.0;
    for (double A : {0.8, 2.0}) {
      ReconstructOptions opts;
      opts.anchor = parabola_anchor(A, 0.2);
      opts.quadrature.abs_tol = 1e-13;
      const CausticCurve cc = caustic_curve(parabola_mirror(A), TiltField::reflection(), {0.2, kPi - 0.2, 1000}, opts);
      if (cc.failures() != 0) throw std::runtime_error("caustic nodes failed");
      for (const auto& f : cc.source) {
        implicit = std::max(implicit, std::fabs(f.position.y * f.position.y + 2 * A * f.position.x + A * A));
      }
      for (const auto& c : cc.samples()) scatter = std::max(scatter, distance(c.position, {-A, 0.0}));
    }
    o.need("scatter", scatter, 1e-7);
    o.need("implicit residual", implicit, 1e-8);
  });

  criterion(7, "skew families", [](Outcome& o) {
    std::mt19937_64 rng(2024);
    double pbp = 0.0, inv = 0.0, ode = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double phi = test::uniform(rng, -1.2, 1.2), a = test::uniform(rng, -2.0, 2.0);
      const double co = std::cos(phi), si = std::sin(phi);
      const InclinationCurve c = point_by_point_curve(1.0, a, phi);
      for (int j = 0; j <= 200; ++j) {
        const double t = -1.0 + j / 100.0;
        const double R = c.radius(t);
        pbp = std::max(pbp, std::fabs(co * c.derivative(t) + si * R - a * R) / std::max(1.0, std::fabs(R)));
      }
      pbp = std::max(pbp, family_residual(c, SkewCase::point_by_point, a, phi, 0.0, {-1.0, 1.0, 201}));
    }
    int drawn = 0;
    while (drawn < 20) {
      const double phi = test::uniform(rng, -1.2, 1.2), a = test::uniform(rng, -2.0, 2.0);
      const InversePositionCurve c =
          inverse_position_curve(test::uniform(rng, -2, 2), test::uniform(rng, -2, 2), a, phi);
      if (!c.alpha) continue;
      ++drawn;
      const double co = std::cos(phi), si = std::sin(phi), alpha = *c.alpha;
      const double w2 = a * a / (co * co) - std::pow(std::tan(phi), 2);
      double scale = 1.0;
      for (int j = 0; j <= 200; ++j) {
        const double t = -1.0 + j / 100.0;
        scale = std::max({scale, std::fabs(c.curve.radius(t)), std::fabs(c.curve.radius(alpha - t))});
      }
      for (int j = 0; j <= 200; ++j) {
        const double t = -1.0 + j / 100.0;
        const double R = c.curve.radius(t);
        inv = std::max(inv, std::fabs(co * c.curve.derivative(t) + si * R - a * c.curve.radius(alpha - t)) / scale);
        ode = std::max(ode, std::fabs(c.curve.second_derivative(t).value() + w2 * R) / scale);
      }
      inv = std::max(inv, family_residual(c.curve, SkewCase::inverse_position, a, phi, alpha, {-1.0, 1.0, 201}));
    }
    o.need("point-by-point", pbp, 1e-9);
    o.need("inverse-position", inv, 1e-9);
    o.need("inverse ODE", ode, 1e-9);
    bool exact = true;
    for (int i = 0; i < 20; ++i) {
      const double phi = test::uniform(rng, -1.2, 1.2);
      const double s = std::sin(phi);
      for (double a : {s, -s}) {
        exact = exact && inverse_omega_sq(a, phi) == 0.0 &&
                inverse_position_curve(1.0, 0.5, a, phi).regime == InverseRegime::linear;
        for (double off : {1 + 1e-6, 1 - 1e-6}) {
          exact = exact && inverse_position_curve(1.0, 0.5, a * off, phi).regime != InverseRegime::linear;
        }
      }
    }
    o.need("involute degeneration exactly at +-sin phi", exact);
  });

  criterion(8, "delay roots", [](Outcome& o) {
    std::mt19937_64 rng(77);
    double lam = 0.0, curve = 0.0;
    int drawn = 0;
    const std::vector<int> ks{0, -1, 1, 2, -2};
    while (drawn < 20) {
      const double a = test::uniform(rng, -2.0, 2.0), alpha = test::uniform(rng, 0.1, 2.0);
      const double phi = test::uniform(rng, -1.0, 1.0);
      if (a == 0.0 || delay_lambert_rhs(a, alpha, phi) < -std::exp(-1.0)) continue;
      ++drawn;
      const auto roots = delay_roots(a, alpha, phi, ks);
      const double target = a / std::cos(phi);
      for (const auto& r : roots) {
        const std::complex<double> l = r.lambda;
        lam = std::max(lam, std::abs((l + std::tan(phi)) * std::exp(alpha * l) - target) / std::max(1.0, std::fabs(target)));
      }
      const std::complex<double> l0 = roots.front().lambda;
      if (l0.imag() != 0.0) throw std::runtime_error("W_0 not real on a real draw");
      const double l = l0.real();
      const InclinationCurve c = delay_curve({phi, a, SkewCase::delay, alpha, {{1.0, 0.0}}, {0}}, {roots.data(), 1});
      double scale = 1.0;
      for (int j = 0; j <= 200; ++j) scale = std::max(scale, std::exp(l * (j / 100.0 - alpha)));
      for (int j = 0; j <= 200; ++j) {
        const double t = j / 100.0;
        const double R = std::exp(l * t);
        curve = std::max(curve, std::fabs(c.radius(t) - R) / scale);
        curve = std::max(curve, std::fabs(std::cos(phi) * l * R + std::sin(phi) * R - a * std::exp(l * (t - alpha))) / scale);
      }
      curve = std::max(curve, family_residual(c, SkewCase::delay, a, phi, alpha, {0.0, 2.0, 201}));
    }
    double round = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double r = std::exp(test::uniform(rng, std::log(0.1), std::log(10.0)));
      const std::complex<double> z = std::polar(r, test::uniform(rng, -kPi, kPi));
      for (int k = -2; k <= 2; ++k) {
        const std::complex<double> w = lambert_w(k, z);
        round = std::max(round, std::abs(w * std::exp(w) - z) / std::abs(z));
      }
    }
    o.need("Lambert-equation residual", lam, 1e-10);
    o.need("delay residual of e^(lambda0 theta)", curve, 1e-9);
    o.need("W round trip on annulus", round, 1e-12);
  });

  criterion(9, "Puiseux self-similarity", [](Outcome& o) {
    const double c = 0.2, g = 3.0;
    const PuiseuxReport rep = puiseux_diagnostics(c, g, {0.1, 4 * kPi + 0.1, 8001});
    double cusp = 0.0;
    std::size_t n = 1;
    for (double t : rep.cusps) cusp = std::max(cusp, std::fabs(t - kPi * static_cast<double>(n++) / g));
    o.need("cusp count", rep.cusps.size() == 12);
    o.need("cusp position", cusp, 1e-9);
    // spiral centre from three consecutive cusps: z_{n+1} - C = q (z_n - C)
    using cd = std::complex<double>;
    std::vector<cd> z;
    for (const auto& p : rep.cusp_positions) z.emplace_back(p.x, p.y);
    if (z.size() < 4) throw std::runtime_error("too few cusps");
    const cd q = (z[2] - z[1]) / (z[1] - z[0]);
    const cd centre = (z[1] - q * z[0]) / (1.0 - q);
    double ratio = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
      ratio = std::max(ratio, std::fabs(std::abs(z[i + 1] - centre) / std::abs(z[i] - centre) - std::exp(c * kPi / g)));
    }
    o.need("distance ratio", ratio, 1e-6);
  });

  criterion(10, "tan coefficients", [](Outcome& o) {
    const auto tau = tan_coeffs(30);
    double worst = 0.0;
    for (int i = -1200; i <= 1200; ++i) {
      const double x = i / 1000.0;
      double acc = 0.0;
      for (int n = 30; n >= 0; --n) acc = acc * x * x + tau[n];
      worst = std::max(worst, std::fabs(acc * x - std::tan(x)));
    }
    o.need("reconstruction on |x| <= 1.2, n_max = 30", worst, 1e-10);
    bool bound = true;
    const auto more = tan_coeffs(60);
    for (int n = 1; n <= 60; ++n) bound = bound && more[n] > 0 && more[n] <= kPi * kPi / 3 * std::pow(2 / kPi, 2 * n);
    o.need("bound for n >= 1", bound);
    // tau_{2n} = 2 (2^{2n} - 1) zeta(2n) / pi^{2n} read with x^{2n+1} gives 1 at
    // n = 1; the coefficient is 1/3. Expected mismatch, the shift by one fixes it.
    const double unshifted = 2.0 * 3.0 * zeta_even(2) / (kPi * kPi);
    const double shifted = 2.0 * 15.0 * zeta_even(4) / std::pow(kPi, 4);
    o.need("unshifted formula mismatches at n = 1", std::fabs(unshifted - tau[1]) > 0.5);
    o.need("shifted formula at n = 1", std::fabs(shifted - tau[1]), 1e-15);
  });

  criterion(11, "determinism and runtime", [&](Outcome& o) {
    const fs::path dir = fs::temp_directory_path() / "caustics_acceptance";
    fs::create_directories(dir);
    const std::string exe = CAUSTICS_CLI_PATH;
    const std::vector<std::string> jobs{
        "caustic --curve circle --tilt reflection --interval 0:pi --samples 1000",
        "pantograph --m 2 --interval 0:4pi --samples 2000",
        "skew --case delay --phi0 0.3 --a 1.2 --alpha 0.8 --samples 400",
        "verify --suite all --seed 3",
    };
    bool same = true;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      std::string bytes[2];
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path out = dir / ("run" + std::to_string(j) + "_" + std::to_string(rep) + ".csv");
        const fs::path txt = dir / ("run" + std::to_string(j) + "_" + std::to_string(rep) + ".txt");
        const std::string cmd = exe + " " + jobs[j] + " --out-csv " + out.string() + " > " + txt.string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
          o.note("exit " + std::to_string(WEXITSTATUS(status)) + " for " + jobs[j]);
          same = false;
        }
        std::ifstream a(out, std::ios::binary), b(txt, std::ios::binary);
        std::ostringstream s;
        s << a.rdbuf() << b.rdbuf();
        bytes[rep] = s.str();
      }
      same = same && !bytes[0].empty() && bytes[0] == bytes[1];
    }
    o.need("byte-identical reruns", same);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.need("acceptance runtime (s)", secs, 120.0);
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
