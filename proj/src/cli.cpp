#include "caustics/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "caustics/caustic.hpp"
#include "caustics/csv.hpp"
#include "caustics/error.hpp"
#include "caustics/pantograph.hpp"
#include "caustics/skew.hpp"
#include "caustics/svg.hpp"
#include "caustics/verify.hpp"

namespace caustics::cli {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void invalid(const std::string& msg) { fail(ErrorCode::validation, msg); }

std::string fmt(double v) { return csv::format(v); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    invalid("cannot parse " + std::string(what) + " '" + std::string(text) + "' as a number");
  }
  if (!std::isfinite(v)) invalid(std::string(what) + " must be finite");
  return v;
}

long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    invalid("cannot parse " + std::string(what) + " '" + std::string(text) + "' as an integer");
  }
  return v;
}

std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number(part, what));
  return out;
}

// One term of an angle literal: [coef][*]pi[/den] or a plain number or a/b.
double parse_angle_term(std::string_view term, std::string_view whole) {
  const std::size_t pi = term.find("pi");
  if (pi == std::string_view::npos) {
    const std::size_t slash = term.find('/');
    if (slash == std::string_view::npos) return parse_number(term, "angle");
    return parse_number(term.substr(0, slash), "angle") / parse_number(term.substr(slash + 1), "angle");
  }
  std::string_view coef = trim(term.substr(0, pi));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double value = kPi * (coef.empty() ? 1.0 : parse_number(coef, "angle coefficient"));
  std::string_view rest = trim(term.substr(pi + 2));
  if (!rest.empty()) {
    if (rest.front() != '/') invalid("cannot parse angle '" + std::string(whole) + "'");
    value /= parse_number(rest.substr(1), "angle denominator");
  }
  return value;
}

AngleInterval interval_param(const std::map<std::string, std::string>& p, std::string_view fallback,
                             std::size_t default_samples);

const std::string* find(const std::map<std::string, std::string>& p, const std::string& key) {
  const auto it = p.find(key);
  return it == p.end() ? nullptr : &it->second;
}

double number_param(const std::map<std::string, std::string>& p, const std::string& key, double fallback) {
  const std::string* v = find(p, key);
  return v ? parse_number(*v, "--" + key) : fallback;
}

long integer_param(const std::map<std::string, std::string>& p, const std::string& key, long fallback) {
  const std::string* v = find(p, key);
  return v ? parse_integer(*v, "--" + key) : fallback;
}

const std::string& required(const std::map<std::string, std::string>& p, const std::string& key,
                            std::string_view sub) {
  const std::string* v = find(p, key);
  if (!v) invalid(std::string(sub) + " needs --" + key);
  return *v;
}

AngleInterval interval_param(const std::map<std::string, std::string>& p, std::string_view fallback,
                             std::size_t default_samples) {
  const long n = integer_param(p, "samples", static_cast<long>(default_samples));
  if (n < 2) invalid("--samples must be at least 2");
  const std::string* text = find(p, "interval");
  return parse_interval(text ? std::string_view(*text) : fallback, static_cast<std::size_t>(n));
}

TiltField parse_tilt(std::string_view text) {
  text = trim(text);
  if (text == "evolute") return TiltField::evolute();
  if (text == "reflection") return TiltField::reflection();
  if (text.substr(0, 5) == "skew:") return TiltField::skew(parse_angle(text.substr(5)));
  invalid("unknown tilt '" + std::string(text) + "' (expected evolute, reflection or skew:<phi>)");
}

ReconstructOptions reconstruct_options(const std::map<std::string, std::string>& p) {
  ReconstructOptions opts;
  opts.quadrature.abs_tol = number_param(p, "tolerance", opts.quadrature.abs_tol);
  if (!(opts.quadrature.abs_tol > 0.0)) invalid("--tolerance must be positive");
  return opts;
}

// Where CSV and text go for one job.
struct Sinks {
  std::ostream& csv;
  std::ostream& text;
};

struct Job {
  const JobSpec& spec;
  std::ostream& out;
  std::ostream& err;
  std::optional<std::string> csv_path;
  std::optional<std::string> svg_path;
  std::ostringstream csv_buffer;

  // verify never puts CSV on stdout, so its table can go there
  std::ostream& text() { return csv_path || spec.subcommand == "verify" ? out : err; }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) fail(ErrorCode::io, "failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit_svg(Job& job, const svg::Scene& scene) {
  if (!job.svg_path) return;
  std::ostringstream s;
  svg::write(s, scene);
  write_file(*job.svg_path, s.str());
}

void check_keys(const JobSpec& spec, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : spec.params) {
    if (!allowed.count(k)) invalid("unknown key '" + k + "' for subcommand " + spec.subcommand);
  }
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::numeric:
    case ErrorCode::evaluation:
    case ErrorCode::flat_caustic:
    case ErrorCode::caustic_at_infinity:
    case ErrorCode::cusp:
      return numeric_error;
    default:
      return validation_error;
  }
}

// ---- curve ---------------------------------------------------------------

int run_curve(Job& job) {
  const auto& p = job.spec.params;
  check_keys(job.spec, {"curve", "interval", "samples", "tolerance", "from-csv"});
  if (const std::string* path = find(p, "from-csv")) {
    if (find(p, "curve")) invalid("--from-csv and --curve are exclusive");
    std::istringstream in(read_file(*path));
    const std::vector<FrameSample> samples = read_frame_csv(in);
    write_frame_csv(job.csv_buffer, samples);
    job.text() << "re-emitted " << samples.size() << " samples from " << *path << "\n";
    return ok;
  }
  const NamedCurve nc = curve_from_name(required(p, "curve", "curve"));
  const AngleInterval grid = clip_to_poles(nc.curve, interval_param(p, "0:2pi", 1000));
  ReconstructOptions opts = reconstruct_options(p);
  opts.anchor = nc.anchor(grid.lo);
  const std::vector<FrameSample> samples = reconstruct(nc.curve, grid, opts);
  write_frame_csv(job.csv_buffer, samples);

  const CuspScan scan = find_cusps(nc.curve, grid);
  job.text() << "curve " << nc.curve.label() << " on [" << fmt(grid.lo) << ", " << fmt(grid.hi) << "], "
             << samples.size() << " samples, " << scan.cusps.size() << " cusps\n";
  for (double t : scan.cusps) job.text() << "  cusp theta=" << fmt(t) << "\n";

  svg::Scene scene;
  svg::Group mirror{"mirror", "black", 1.0, {{}}, {}};
  for (const auto& s : samples) mirror.paths[0].push_back(s.position);
  svg::Group cusps{"cusps", "red", 1.0, {}, {}};
  if (!scan.cusps.empty()) {
    std::vector<double> ts{grid.lo};
    ts.insert(ts.end(), scan.cusps.begin(), scan.cusps.end());
    const auto pos = positions_at(nc.curve, ts, opts);
    cusps.markers.assign(pos.begin() + 1, pos.end());
  }
  scene.groups = {mirror, cusps};
  emit_svg(job, scene);
  return ok;
}

// ---- caustic -------------------------------------------------------------

svg::Scene caustic_scene(const CausticCurve& cc) {
  svg::Group mirror{"mirror", "black", 1.0, {{}}, {}};
  for (const auto& s : cc.source) mirror.paths[0].push_back(s.position);
  svg::Group caustic{"caustic", "darkorange", 1.0, {{}}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& n : cc.nodes) caustic.paths[0].push_back(n.ok() ? n.sample->position : PlanePoint{nan, nan});
  svg::Group rays{"rays", "steelblue", 0.5, {}, {}};
  const std::size_t stride = std::max<std::size_t>(1, cc.nodes.size() / 48);
  for (std::size_t i = 0; i < cc.nodes.size(); i += stride) {
    if (cc.nodes[i].ok()) rays.paths.push_back({cc.source[i].position, cc.nodes[i].sample->position});
  }
  svg::Group cusps{"cusps", "red", 1.0, {}, {}};
  for (std::size_t i = 0; i + 1 < cc.nodes.size(); ++i) {
    const auto& a = cc.nodes[i];
    const auto& b = cc.nodes[i + 1];
    if (!a.ok() || !b.ok()) continue;
    const double ra = a.sample->caustic_radius;
    const double rb = b.sample->caustic_radius;
    if ((ra < 0.0) != (rb < 0.0) || ra == 0.0) {
      cusps.markers.push_back(std::fabs(ra) <= std::fabs(rb) ? a.sample->position : b.sample->position);
    }
  }
  svg::Scene scene;
  scene.groups = {mirror, caustic, rays, cusps};
  return scene;
}

void report_failures(Job& job, const CausticCurve& cc) {
  const std::size_t failed = cc.failures();
  job.text() << "caustic nodes: " << cc.nodes.size() - failed << " ok, " << failed << " failed\n";
  if (failed == cc.nodes.size()) {
    for (const auto& n : cc.nodes) {
      if (!n.ok()) fail(n.error, "every caustic node failed; first: " + n.message);
    }
  }
  int shown = 0;
  for (const auto& n : cc.nodes) {
    if (!n.ok() && shown++ < 5) job.text() << "  " << n.message << "\n";
  }
}

int run_caustic(Job& job) {
  const auto& p = job.spec.params;
  check_keys(job.spec, {"curve", "tilt", "interval", "samples", "tolerance"});
  const NamedCurve nc = curve_from_name(required(p, "curve", "caustic"));
  const TiltField tilt = parse_tilt(required(p, "tilt", "caustic"));
  const AngleInterval grid = clip_to_poles(nc.curve, interval_param(p, "0:pi", 1000));
  ReconstructOptions opts = reconstruct_options(p);
  opts.anchor = nc.anchor(grid.lo);
  const CausticCurve cc = caustic_curve(nc.curve, tilt, grid, opts);
  const std::vector<CausticSample> samples = cc.samples();
  write_caustic_csv(job.csv_buffer, samples);
  job.text() << "caustic of " << nc.curve.label() << " under tilt " << required(p, "tilt", "caustic") << " on ["
             << fmt(grid.lo) << ", " << fmt(grid.hi) << "]\n";
  report_failures(job, cc);
  emit_svg(job, caustic_scene(cc));
  return ok;
}

// ---- skew ----------------------------------------------------------------

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

int run_skew(Job& job) {
  const auto& p = job.spec.params;
  check_keys(job.spec, {"spec", "case", "phi0", "a", "alpha", "interval", "samples", "tolerance"});
  std::map<std::string, std::string> kv;
  if (const std::string* path = find(p, "spec")) {
    std::istringstream in(read_file(*path));
    kv = read_key_values(in);
    const std::set<std::string> allowed{"case", "phi0", "a", "alpha", "A", "B", "roots", "coefficients"};
    for (const auto& [k, v] : kv) {
      if (!allowed.count(k)) invalid("unknown key '" + k + "' in family spec " + *path);
    }
  }
  // Flags override the file.
  for (const char* key : {"case", "phi0", "a", "alpha"}) {
    if (const std::string* v = find(p, key)) kv[key] = *v;
  }

  SkewFamilySpec spec;
  const std::string kind = kv.count("case") ? kv.at("case") : "";
  if (kind == "point_by_point") {
    spec.kind = SkewCase::point_by_point;
  } else if (kind == "inverse_position") {
    spec.kind = SkewCase::inverse_position;
  } else if (kind == "delay") {
    spec.kind = SkewCase::delay;
  } else {
    invalid("skew needs a case (--case or case= in --spec): point_by_point | inverse_position | delay");
  }
  auto angle_or = [&](const std::string& key, double fallback) {
    return kv.count(key) ? parse_angle(kv.at(key)) : fallback;
  };
  auto number_or = [&](const std::string& key, double fallback) {
    return kv.count(key) ? parse_number(kv.at(key), key) : fallback;
  };
  spec.phi0 = angle_or("phi0", 0.0);
  spec.factor_a = number_or("a", 1.0);
  const bool has_alpha = kv.count("alpha") > 0;
  spec.alpha = angle_or("alpha", 0.0);
  if (kv.count("roots")) {
    for (const auto& r : split(kv.at("roots"), ',')) spec.root_indices.push_back(static_cast<int>(parse_integer(r, "root index")));
  }
  if (kv.count("coefficients")) {
    // pairs may be separated by ';' as in the echo, or all by ','
    std::string list = kv.at("coefficients");
    std::replace(list.begin(), list.end(), ';', ',');
    const auto flat = parse_number_list(list, "coefficient");
    if (flat.size() % 2 != 0) invalid("coefficients must come in (A, B) pairs");
    for (std::size_t i = 0; i < flat.size(); i += 2) spec.coefficients.emplace_back(flat[i], flat[i + 1]);
  }
  const double A = number_or("A", 1.0);

  std::ostream& t = job.text();
  t << "family spec: case=" << to_string(spec.kind) << " phi0=" << fmt(spec.phi0) << " a=" << fmt(spec.factor_a)
    << " alpha=" << fmt(spec.alpha) << " A=" << fmt(A);
  if (kv.count("B")) t << " B=" << kv.at("B");
  if (!spec.root_indices.empty()) t << " roots=" << join_ints(spec.root_indices);
  if (!spec.coefficients.empty()) {
    t << " coefficients=";
    for (std::size_t i = 0; i < spec.coefficients.size(); ++i) {
      t << (i ? ";" : "") << fmt(spec.coefficients[i].first) << "," << fmt(spec.coefficients[i].second);
    }
  }
  t << "\n";

  const AngleInterval grid = interval_param(p, "0:pi", 500);
  std::optional<InclinationCurve> curve;
  std::optional<double> residual;
  if (spec.kind == SkewCase::point_by_point) {
    spec.validate();
    curve = point_by_point_curve(A, spec.factor_a, spec.phi0);
    residual = family_residual(*curve, spec.kind, spec.factor_a, spec.phi0, 0.0, grid);
  } else if (spec.kind == SkewCase::inverse_position) {
    spec.validate();
    const InversePositionCurve ipc =
        kv.count("B") ? inverse_position_curve(A, number_or("B", 0.0), spec.factor_a, spec.phi0)
        : has_alpha   ? inverse_position_for_alpha(A, spec.alpha, spec.factor_a, spec.phi0)
                      : inverse_position_curve(A, 0.0, spec.factor_a, spec.phi0);
    t << "regime=" << to_string(ipc.regime) << " omega_sq=" << fmt(ipc.omega_sq) << " B=" << fmt(ipc.B);
    if (ipc.alpha) {
      t << " alpha=" << fmt(*ipc.alpha) << "\n";
      residual = family_residual(ipc.curve, spec.kind, spec.factor_a, spec.phi0, *ipc.alpha, grid);
    } else {
      t << " alpha=none (no shift satisfies the inverse equation)\n";
    }
    curve = ipc.curve;
  } else {
    const DelayNormalization norm = normalize_to_delay(spec.phi0, spec.factor_a, spec.alpha);
    if (norm.flipped) {
      t << "advance normalized to delay: phi0=" << fmt(norm.phi0) << " a=" << fmt(norm.factor_a)
        << " alpha=" << fmt(norm.alpha) << " (theta -> -theta)\n";
    }
    spec.phi0 = norm.phi0;
    spec.factor_a = norm.factor_a;
    spec.alpha = norm.alpha;
    spec.validate();
    if (spec.root_indices.empty()) spec.root_indices = {0};
    if (spec.coefficients.empty()) spec.coefficients.assign(spec.root_indices.size(), {1.0, 0.0});
    const auto roots = delay_roots(spec.factor_a, spec.alpha, spec.phi0, spec.root_indices);
    t << "lambert rhs=" << fmt(delay_lambert_rhs(spec.factor_a, spec.alpha, spec.phi0))
      << " real branches={" << join_ints(real_delay_branches(spec.factor_a, spec.alpha, spec.phi0)) << "}\n";
    for (const auto& r : roots) {
      t << "  k=" << r.index_k << " lambda=" << fmt(r.lambda.real()) << (r.lambda.imag() < 0 ? " - " : " + ")
        << fmt(std::fabs(r.lambda.imag())) << "i residual=" << fmt(r.residual) << "\n";
    }
    curve = delay_curve(spec, roots);
    residual = family_residual(*curve, spec.kind, spec.factor_a, spec.phi0, spec.alpha, grid);
  }
  if (residual) t << "family residual=" << fmt(*residual) << "\n";

  ReconstructOptions opts = reconstruct_options(p);
  const CausticCurve cc = caustic_curve(*curve, TiltField::skew(spec.phi0), grid, opts);
  write_caustic_csv(job.csv_buffer, cc.samples());
  report_failures(job, cc);
  emit_svg(job, caustic_scene(cc));
  return ok;
}

// ---- pantograph ----------------------------------------------------------

int run_pantograph(Job& job) {
  const auto& p = job.spec.params;
  check_keys(job.spec, {"m", "order", "jet-order", "interval", "samples", "tolerance"});
  const long m = parse_integer(required(p, "m", "pantograph"), "--m");
  const long order = integer_param(p, "order", 30);
  const long jet = integer_param(p, "jet-order", 12);
  if (m < -3 || m > 60) invalid("--m must lie in [-3, 60]");
  if (order < 1 || order > 400) invalid("--order must lie in [1, 400]");
  const int k = static_cast<int>(m) - 1;

  std::ostream& t = job.text();
  const Rational a_exact = similarity_factor_exact(k);
  t << "m=" << m << " k=" << k << " a=" << a_exact.str() << "\n";
  if (k == -4) {
    invalid("m = -3 (a = 0) is the parabolic mirror; its closed form R = A/sin^3 is the curve 'parabola:A'");
  }
  const PantographSeries series = solve_series(k, static_cast<int>(order));

  csv::write_header(job.csv_buffer, "n,a_n");
  for (int n = series.k; n <= series.order; ++n) {
    csv::write_row(job.csv_buffer, {static_cast<double>(n), series.coeff(n)});
  }

  const AngleInterval grid = interval_param(p, "0:4pi", 2000);
  if (grid.lo < 0.0) invalid("pantograph interval must start at theta >= 0");
  const PantographSolution sol = make_solution(series, grid.hi, static_cast<int>(jet));
  const double residual = pantograph_residual(sol, AngleInterval{std::min(0.01, 0.5 * grid.hi), 0.5 * grid.hi, 400});
  t << "bound M=" << fmt(series.bound_M) << " (from n=" << series.bound_N0 << ")\n";
  t << "pantograph residual on [0.01, " << fmt(0.5 * grid.hi) << "]=" << fmt(residual) << "\n";
  const MirrorReport rep = mirror_report(sol, grid);
  t << rep.to_text();

  svg::Group mirror{"mirror", "black", 1.0, {{}}, {}};
  for (const auto& f : rep.mirror) mirror.paths[0].push_back(f.position);
  svg::Group caustic{"caustic", "darkorange", 1.0, {rep.caustic}, {}};
  svg::Group scaled{"scaled", "seagreen", 0.75, {{}}, {}};
  for (const auto& c : rep.caustic) scaled.paths[0].push_back(c / series.factor_a);
  svg::Group cusps{"cusps", "red", 1.0, {}, rep.caustic_cusps};
  svg::Group line{"cuspline", "gray", 0.5, {}, {}};
  if (rep.caustic_cusps.size() >= 2) line.paths.push_back({rep.caustic_cusps.front(), rep.caustic_cusps.back()});
  svg::Scene scene;
  scene.groups = {mirror, caustic, scaled, cusps, line};
  emit_svg(job, scene);
  return ok;
}

// ---- verify --------------------------------------------------------------

int run_verify(Job& job) {
  const auto& p = job.spec.params;
  check_keys(job.spec, {"suite", "config", "seed"});
  const std::string& suite = required(p, "suite", "verify");
  const auto seed = static_cast<std::uint64_t>(integer_param(p, "seed", 1));

  std::vector<std::string> names;
  if (suite == "all") {
    if (const std::string* cfg = find(p, "config")) {
      std::istringstream in(read_file(*cfg));
      const auto kv = read_key_values(in);
      for (const auto& [k, v] : kv) {
        if (k != "suites") invalid("unknown key '" + k + "' in suite config " + *cfg);
      }
      if (kv.count("suites")) {
        for (const auto& s : split(kv.at("suites"), ',')) {
          if (!s.empty()) names.push_back(s);
        }
      }
      if (names.empty()) invalid("suite config " + *cfg + " lists no suites; add suites = name,name,...");
    } else {
      names = verify::suite_names();
    }
  } else {
    for (const auto& s : split(suite, ',')) {
      if (!s.empty()) names.push_back(s);
    }
    if (names.empty()) invalid("--suite is empty");
  }
  const auto& known = verify::suite_names();
  for (const auto& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) invalid("unknown suite '" + n + "'");
  }

  std::ostream& t = job.text();
  bool all = true;
  csv::write_header(job.csv_buffer, "suite,check,metric,tolerance,pass");
  for (const auto& n : names) {
    for (const auto& c : verify::run_suite(n, seed)) {
      all = all && c.pass;
      t << (c.pass ? "PASS" : "FAIL") << "  " << c.suite << "/" << c.name << "  metric=" << fmt(c.metric)
        << "  tolerance=" << fmt(c.tolerance) << "\n";
      job.csv_buffer << c.suite << "," << c.name << "," << fmt(c.metric) << "," << fmt(c.tolerance) << ","
                     << (c.pass ? 1 : 0) << "\n";
    }
  }
  return all ? ok : numeric_error;
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string_view whole = trim(text);
  if (whole.empty()) invalid("empty angle");
  double total = 0.0;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= whole.size(); ++i) {
    const bool end = i == whole.size();
    const bool sep = !end && (whole[i] == '+' || whole[i] == '-') && whole[i - 1] != 'e' && whole[i - 1] != 'E' &&
                     whole[i - 1] != '*' && whole[i - 1] != '/';
    if (!end && !sep) continue;
    std::string_view term = trim(whole.substr(start, i - start));
    double sign = 1.0;
    if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      sign = term.front() == '-' ? -1.0 : 1.0;
      term = trim(term.substr(1));
    }
    if (term.empty()) invalid("cannot parse angle '" + std::string(whole) + "'");
    total += sign * parse_angle_term(term, whole);
    start = i;
  }
  if (!std::isfinite(total)) invalid("angle '" + std::string(whole) + "' is not finite");
  return total;
}

AngleInterval parse_interval(std::string_view text, std::size_t samples) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) invalid("interval must look like lo:hi, got '" + std::string(text) + "'");
  AngleInterval iv{parse_angle(parts[0]), parse_angle(parts[1]), samples};
  if (!(iv.lo < iv.hi)) invalid("interval needs lo < hi, got '" + std::string(text) + "'");
  if (samples < 2) invalid("need at least 2 samples");
  return iv;
}

NamedCurve curve_from_name(std::string_view name) {
  name = trim(name);
  const std::size_t colon = name.find(':');
  const std::string head(name.substr(0, colon));
  const std::vector<double> args =
      colon == std::string_view::npos ? std::vector<double>{} : parse_number_list(name.substr(colon + 1), "curve parameter");
  auto origin = [](double) { return PlanePoint{}; };
  auto need = [&](std::size_t n, const char* usage) {
    if (args.size() != n) invalid("curve '" + head + "' takes " + usage);
  };
  if (head == "circle") {
    if (args.size() > 1) invalid("curve 'circle' takes an optional radius: circle[:r]");
    return {circle_curve(args.empty() ? 1.0 : args[0]), origin};
  }
  if (head == "cycloid") {
    if (args.size() > 1) invalid("curve 'cycloid' takes an optional scale: cycloid[:s]");
    return {cycloid_curve(args.empty() ? 1.0 : args[0]), origin};
  }
  if (head == "log_spiral") {
    need(2, "two parameters: log_spiral:A,b");
    return {log_spiral_curve(args[0], args[1]), origin};
  }
  if (head == "parabola") {
    need(1, "one parameter: parabola:A");
    const double A = args[0];
    return {parabola_mirror(A), [A](double t) { return parabola_anchor(A, t); }};
  }
  if (head == "puiseux") {
    need(2, "two parameters: puiseux:c,gamma");
    return {puiseux_curve(args[0], args[1]), origin};
  }
  if (head == "series") {
    if (args.empty()) invalid("curve 'series' needs coefficients: series:c0,c1,...");
    return {polynomial_curve(args), origin};
  }
  invalid("unknown curve '" + head + "' (circle, cycloid, log_spiral:A,b, parabola:A, puiseux:c,g, series:c0,...)");
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const std::size_t eq = l.find('=');
    if (eq == std::string_view::npos) invalid("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key(trim(l.substr(0, eq)));
    if (key.empty()) invalid("line " + std::to_string(lineno) + ": empty key");
    if (out.count(key)) invalid("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    out[key] = std::string(trim(l.substr(eq + 1)));
  }
  return out;
}

int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  Job job{spec, out, err, std::nullopt, std::nullopt, {}};
  try {
    for (const auto& o : spec.outputs) {
      if (o.format == "csv") {
        job.csv_path = o.path;
      } else if (o.format == "svg") {
        job.svg_path = o.path;
      } else {
        invalid("unknown output format '" + o.format + "'");
      }
    }
    int code = validation_error;
    if (spec.subcommand == "curve") {
      code = run_curve(job);
    } else if (spec.subcommand == "caustic") {
      code = run_caustic(job);
    } else if (spec.subcommand == "skew") {
      code = run_skew(job);
    } else if (spec.subcommand == "pantograph") {
      code = run_pantograph(job);
    } else if (spec.subcommand == "verify") {
      code = run_verify(job);
    } else {
      invalid("unknown subcommand '" + spec.subcommand + "'");
    }
    if (job.csv_path) {
      write_file(*job.csv_path, job.csv_buffer.str());
    } else if (spec.subcommand != "verify") {
      out << job.csv_buffer.str();
    }
    return code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e.code());
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caustics of plane curves from inclination equations", "caustics"};
  app.require_subcommand(1);

  struct Opt {
    const char* name;
    const char* help;
  };
  const std::map<std::string, std::vector<Opt>> options{
      {"curve",
       {{"curve", "named curve"},
        {"interval", "lo:hi"},
        {"samples", "sample count"},
        {"tolerance", "quadrature tolerance"},
        {"from-csv", "re-read a curve CSV"}}},
      {"caustic",
       {{"curve", "named curve"},
        {"tilt", "evolute | reflection | skew:<phi>"},
        {"interval", "lo:hi"},
        {"samples", "sample count"},
        {"tolerance", "quadrature tolerance"}}},
      {"skew",
       {{"spec", "family spec file (key=value)"},
        {"case", "point_by_point | inverse_position | delay"},
        {"phi0", "constant tilt"},
        {"a", "similarity factor"},
        {"alpha", "shift"},
        {"interval", "lo:hi"},
        {"samples", "sample count"},
        {"tolerance", "quadrature tolerance"}}},
      {"pantograph",
       {{"m", "mirror exponent m = k + 1"},
        {"order", "series truncation N"},
        {"jet-order", "derivative jet for doubling"},
        {"interval", "lo:hi"},
        {"samples", "sample count"},
        {"tolerance", "quadrature tolerance"}}},
      {"verify", {{"suite", "all or comma list"}, {"config", "suite config file"}, {"seed", "random seed"}}},
  };
  const std::map<std::string, std::string> about{
      {"curve", "reconstruct a curve from R(theta)"},
      {"caustic", "caustic of a curve under a tilt field"},
      {"skew", "curves similar to their skew-evolutes"},
      {"pantograph", "solve the mirror pantograph equation"},
      {"verify", "run self-check suites"},
  };

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::pair<std::string, std::string>> outputs;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [sub, opts] : options) {
    CLI::App* s = app.add_subcommand(sub, about.at(sub));
    subs[sub] = s;
    for (const auto& o : opts) s->add_option(std::string("--") + o.name, values[sub][o.name], o.help);
    s->add_option("--out-csv", outputs[sub].first, "CSV output path (default stdout)");
    s->add_option("--out-svg", outputs[sub].second, "SVG output path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error (validation): " << e.what() << "\n";
    return validation_error;
  }

  JobSpec spec;
  for (const auto& [name, s] : subs) {
    if (!s->parsed()) continue;
    spec.subcommand = name;
    for (const auto& o : options.at(name)) {
      if (s->count(std::string("--") + o.name) > 0) spec.params[o.name] = values[name][o.name];
    }
    if (s->count("--out-csv") > 0) spec.outputs.push_back({"csv", outputs[name].first});
    if (s->count("--out-svg") > 0) spec.outputs.push_back({"svg", outputs[name].second});
  }
  return run(spec, out, err);
}

}  // namespace caustics::cli
