#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "spatialgen/network.hpp"
#include "spatialgen/pointset.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::netgen {

struct DelaunayResult {
  std::vector<std::array<int, 3>> triangles;       // point indices
  std::vector<std::pair<int, int>> edges;          // deduplicated, first < second
};

// Incremental Bowyer-Watson triangulation. Predicates accumulate in extended
// precision; an exactly cocircular insertion retries with a deterministic
// perturbation of at most 1e-12 of the point span. Throws "degenerate point
// set" for fewer than 3 points or all-collinear input, and rejects exact
// duplicates.
DelaunayResult delaunay(std::span<const core::Point> points);
DelaunayResult delaunay(const core::PointSet& points);

// Euclidean minimum spanning tree over the complete graph (Prim, ties by
// smaller index). Edges come back as index pairs, first < second.
std::vector<std::pair<int, int>> euclidean_mst(std::span<const core::Point> points);

struct GravityParams {
  double gamma = 1.0;              // population-product exponent
  double interaction_range = 1.0;  // distance decay scale
  int extra_edges = 0;             // non-tree Delaunay edges to add
};

struct CostBenefitParams {
  double lambda = 0.0;  // cost per unit length
  double gamma = 1.0;
};

struct SlimeMouldParams {
  int iterations = 100;
  double flow_amplification = 1.8;  // exponent on |Q| in the reinforcement
  double decay = 0.5;
  double time_step = 0.1;           // requires time_step * decay < 1
  double input_flow = 1.0;
  double keep_threshold = 0.1;
  double initial_conductivity = 1.0;
  std::vector<core::NodeId> terminals;  // source/sink pool, at least 2
};

struct CitySystemParams {
  int n_cities = 10;
  double largest_population = 100.0;
  double zipf_exponent = 1.0;
  double min_separation = 0.0;
  enum class NetworkKind { tree, gravity, complete } network_kind = NetworkKind::tree;
};

// n uniform nodes joined by their Euclidean MST.
core::SpatialNetwork generate_tree_network(int n, const core::Window& window,
                                           core::RngStream& rng);

// MST edges plus each remaining Delaunay edge kept with probability q.
core::SpatialNetwork generate_random_planar(int n, double keep_probability,
                                            const core::Window& window, core::RngStream& rng);

// MST plus the top-scoring non-tree Delaunay edges under the gravity score
// (w_i w_j)^gamma * exp(-d/rg) / d.
core::SpatialNetwork generate_gravity_network(const std::vector<core::Node>& nodes,
                                              const GravityParams& p);

// MST plus greedy addition of Delaunay edges while the benefit
// (w_i w_j)^gamma - lambda*d stays positive.
core::SpatialNetwork generate_cost_benefit_network(const std::vector<core::Node>& nodes,
                                                   const CostBenefitParams& p);

// Physarum-style conductivity dynamics on a connected substrate: repeated
// Kirchhoff solves between random terminal pairs reinforce loaded edges,
// unloaded ones decay; edges below the keep threshold are dropped at the end
// (MST edges re-added if that disconnects the graph).
struct SlimeMouldResult {
  core::SpatialNetwork network;
  std::vector<double> conductivities;  // final D per substrate edge
  std::vector<double> last_flows;      // signed from->to flow of the last solve
};

SlimeMouldResult run_slime_mould(const core::SpatialNetwork& substrate,
                                 const SlimeMouldParams& p, core::RngStream& rng);

core::SpatialNetwork generate_slime_mould(const core::SpatialNetwork& substrate,
                                          const SlimeMouldParams& p, core::RngStream& rng);

// Zipf-weighted cities at minimum pairwise separation, wired as tree,
// gravity, or complete network.
core::SpatialNetwork generate_city_system(const CitySystemParams& p,
                                          const core::Window& window, core::RngStream& rng);

}  // namespace spatialgen::netgen
