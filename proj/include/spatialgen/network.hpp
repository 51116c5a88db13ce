#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spatialgen/geometry.hpp"

namespace spatialgen::core {

using NodeId = std::int64_t;

struct Node {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
  double weight = 1.0;

  Point position() const { return {x, y}; }
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double length = 0.0;
  double capacity = 1.0;
  double free_flow_time = 0.0;
};

// Geometric graph. Undirected networks store one record per edge; algorithms
// treat them symmetrically. Parallel edges are allowed (distinct links can
// join the same pair of nodes), self-loops are not.
struct SpatialNetwork {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool directed = false;
};

// Checks the structural invariants: unique node ids, edge endpoints exist,
// no self-loops, positive attributes, length >= straight-line distance
// (tolerance 1e-9). Throws std::invalid_argument on violation.
void validate(const SpatialNetwork& net);

// Builds a network with node ids 0..n-1 from point positions and index pairs;
// edge length is the Euclidean distance, capacity 1, free-flow time = length.
SpatialNetwork make_geometric_network(std::span<const Point> positions,
                                      std::span<const std::pair<int, int>> edge_indices,
                                      std::span<const double> weights = {});

}  // namespace spatialgen::core
