#include "spatialgen/pointgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spatialgen::pointgen {

using core::Grid;
using core::Point;
using core::PointSet;
using core::RngStream;
using core::Window;

PointSet sample_homogeneous_poisson(double intensity, const Window& window, RngStream& rng) {
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  if (!(window.area() > 0.0)) throw std::invalid_argument("empty window");

  PointSet ps;
  ps.window = window;
  const long long count = rng.next_poisson(intensity * window.area());
  ps.points.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const double x = rng.uniform(window.xmin, window.xmax);
    const double y = rng.uniform(window.ymin, window.ymax);
    ps.points.push_back({x, y});
  }
  return ps;
}

std::pair<int, int> cell_of_point(const Grid& grid, const Point& p) {
  // Half-open cells [k*cs, (k+1)*cs); the top raster row covers the highest
  // y band.
  int col = static_cast<int>(std::floor(p.x / grid.cell_size));
  int y_band = static_cast<int>(std::floor(p.y / grid.cell_size));
  col = std::clamp(col, 0, grid.width - 1);
  y_band = std::clamp(y_band, 0, grid.height - 1);
  return {col, grid.height - 1 - y_band};
}

PointSet sample_inhomogeneous_poisson(const Grid& intensity, RngStream& rng) {
  for (const double v : intensity.values) {
    if (v < 0.0) throw std::invalid_argument("negative cell value");
  }
  const Window window{0.0, 0.0, intensity.extent_x(), intensity.extent_y()};
  const double lambda_max = intensity.max_value();
  PointSet ps;
  ps.window = window;
  if (!(lambda_max > 0.0)) return ps;

  const PointSet candidates = sample_homogeneous_poisson(lambda_max, window, rng);
  for (const Point& p : candidates.points) {
    const auto [col, row] = cell_of_point(intensity, p);
    if (rng.next_double() < intensity.at(col, row) / lambda_max) {
      ps.points.push_back(p);
    }
  }
  return ps;
}

}  // namespace spatialgen::pointgen
