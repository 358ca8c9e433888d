#pragma once

// Minimal deterministic SVG writer: y axis up, one uniform scale for both
// axes, stroke-only paths, fixed three-decimal coordinates.

#include <iosfwd>
#include <string>
#include <vector>

#include "caustics/geometry.hpp"

namespace caustics::svg {

struct Group {
  std::string name;  // mirror, caustic, rays, cusps, cuspline, ...
  std::string stroke = "black";
  double stroke_width = 1.0;
  std::vector<std::vector<PlanePoint>> paths;  // non-finite points split a path
  std::vector<PlanePoint> markers;             // drawn as small circles
};

struct Scene {
  double width = 640.0;
  double height = 640.0;
  double margin = 20.0;
  std::vector<Group> groups;  // emitted in this order
};

void write(std::ostream& out, const Scene& scene);

}  // namespace caustics::svg
