#include "caustics/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace caustics::svg {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

bool finite(PlanePoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

void write(std::ostream& out, const Scene& scene) {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = xmin;
  double xmax = -xmin;
  double ymax = -xmin;
  auto extend = [&](PlanePoint p) {
    if (!finite(p)) return;
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const auto& g : scene.groups) {
    for (const auto& path : g.paths) std::for_each(path.begin(), path.end(), extend);
    std::for_each(g.markers.begin(), g.markers.end(), extend);
  }
  if (!(xmin <= xmax)) xmin = xmax = ymin = ymax = 0.0;
  const double spanx = std::max(xmax - xmin, 1e-12);
  const double spany = std::max(ymax - ymin, 1e-12);
  const double scale =
      std::min((scene.width - 2.0 * scene.margin) / spanx, (scene.height - 2.0 * scene.margin) / spany);
  auto X = [&](double x) { return scene.margin + (x - xmin) * scale; };
  auto Y = [&](double y) { return scene.height - scene.margin - (y - ymin) * scale; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(scene.width) << "\" height=\""
      << num(scene.height) << "\" viewBox=\"0 0 " << num(scene.width) << " " << num(scene.height) << "\">\n";
  for (const auto& g : scene.groups) {
    out << "  <g id=\"" << g.name << "\" fill=\"none\" stroke=\"" << g.stroke << "\" stroke-width=\""
        << num(g.stroke_width) << "\">\n";
    for (const auto& path : g.paths) {
      std::string d;
      bool pen_down = false;
      for (const auto& p : path) {
        if (!finite(p)) {
          pen_down = false;
          continue;
        }
        d += (pen_down ? " L" : (d.empty() ? "M" : " M")) + num(X(p.x)) + " " + num(Y(p.y));
        pen_down = true;
      }
      if (!d.empty()) out << "    <path d=\"" << d << "\"/>\n";
    }
    for (const auto& m : g.markers) {
      if (!finite(m)) continue;
      out << "    <circle cx=\"" << num(X(m.x)) << "\" cy=\"" << num(Y(m.y)) << "\" r=\"3.000\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
}

}  // namespace caustics::svg
