#pragma once

#include "spatialgen/grid.hpp"
#include "spatialgen/pointset.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::pointgen {

// Homogeneous Poisson process: Poisson(intensity * area) points, i.i.d.
// uniform in the window.
core::PointSet sample_homogeneous_poisson(double intensity, const core::Window& window,
                                          core::RngStream& rng);

// Inhomogeneous Poisson process over the grid extent, realized by thinning a
// homogeneous process at the maximum cell intensity. Cells are half-open in
// both axes; an all-zero grid yields an empty set.
core::PointSet sample_inhomogeneous_poisson(const core::Grid& intensity, core::RngStream& rng);

// Storage cell containing a point of the grid extent (col, row with row 0 at
// the top). Shared by thinning and raster perturbation.
std::pair<int, int> cell_of_point(const core::Grid& grid, const core::Point& p);

}  // namespace spatialgen::pointgen
