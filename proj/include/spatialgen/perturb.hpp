#pragma once

#include "spatialgen/grid.hpp"
#include "spatialgen/network.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::perturb {

enum class DeletionStrategy { random_uniform, targeted_betweenness_descending };

// Adds i.i.d. N(0, sigma^2) noise to every cell, clipped at zero.
core::Grid perturb_grid_noise(const core::Grid& grid, double sigma, core::RngStream& rng);

// Drops homogeneous Poisson points of the given intensity on the grid extent
// and adds delta to each containing cell.
core::Grid perturb_grid_poisson(const core::Grid& grid, double intensity, double delta,
                                core::RngStream& rng);

// Removes exactly k nodes (with incident edges) / k edges. Random draws are
// without replacement; the targeted strategy removes in decreasing
// betweenness computed once on the input, ties by id.
core::SpatialNetwork delete_nodes(const core::SpatialNetwork& net, int k,
                                  DeletionStrategy strategy, core::RngStream& rng);
core::SpatialNetwork delete_links(const core::SpatialNetwork& net, int k,
                                  DeletionStrategy strategy, core::RngStream& rng);

// N(0, sigma^2) jitter on every coordinate; edge lengths are reset to the new
// straight-line distances, other attributes and the topology are untouched.
// sigma = 0 is the identity, lengths included.
core::SpatialNetwork jitter_nodes(const core::SpatialNetwork& net, double sigma,
                                  core::RngStream& rng);

}  // namespace spatialgen::perturb
