#pragma once

#include <stdexcept>
#include <vector>

#include "spatialgen/geometry.hpp"

namespace spatialgen::core {

// Finite planar point pattern inside a rectangular window.
struct PointSet {
  Window window;
  std::vector<Point> points;
};

inline void validate(const PointSet& ps) {
  if (!(ps.window.xmax > ps.window.xmin) || !(ps.window.ymax > ps.window.ymin)) {
    throw std::invalid_argument("empty window");
  }
  for (const Point& p : ps.points) {
    if (!ps.window.contains(p)) throw std::invalid_argument("point outside window");
  }
}

}  // namespace spatialgen::core
