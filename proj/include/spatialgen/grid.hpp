#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spatialgen::core {

// Rectangular raster of non-negative values, row-major with row 0 at the top
// (file order). Cell centers sit at ((col+0.5)*cell_size, (height-1-row+0.5)*cell_size),
// so the bottom row of the raster has y = 0.5*cell_size.
struct Grid {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;
  std::vector<double> values;

  Grid() = default;
  Grid(int w, int h, double cs = 1.0, double fill = 0.0)
      : width(w), height(h), cell_size(cs),
        values(static_cast<std::size_t>(w < 0 ? 0 : w) * static_cast<std::size_t>(h < 0 ? 0 : h),
               fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("grid dimensions must be positive");
    if (!(cs > 0.0)) throw std::invalid_argument("cell size must be positive");
  }

  std::size_t size() const { return values.size(); }
  std::size_t idx(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(col);
  }
  double& at(int col, int row) { return values[idx(col, row)]; }
  double at(int col, int row) const { return values[idx(col, row)]; }

  double cell_center_x(int col) const { return (col + 0.5) * cell_size; }
  double cell_center_y(int row) const { return (height - 1 - row + 0.5) * cell_size; }

  double extent_x() const { return width * cell_size; }
  double extent_y() const { return height * cell_size; }

  double total() const { return std::accumulate(values.begin(), values.end(), 0.0); }
  double max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  }
};

}  // namespace spatialgen::core
