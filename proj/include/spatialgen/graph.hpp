#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "spatialgen/network.hpp"

namespace spatialgen::core {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

enum class WeightAttr { length, free_flow_time };

// Index-based adjacency view over a network. Undirected edges appear in both
// node lists; the edge index always refers back to net.edges.
struct IndexedNetwork {
  struct Arc {
    int to = 0;
    int edge = 0;
  };
  std::unordered_map<NodeId, int> index_of;
  std::vector<std::vector<Arc>> adjacency;

  std::size_t node_count() const { return adjacency.size(); }
};

IndexedNetwork index_network(const SpatialNetwork& net);

std::vector<double> edge_weights(const SpatialNetwork& net, WeightAttr attr);

// Single-source Dijkstra over positive weights. Ties in the heap and in
// predecessor selection are broken by smaller node id so that predecessors
// are deterministic. pred_node/pred_edge are -1 at the source and at
// unreachable nodes.
struct DijkstraResult {
  std::vector<double> dist;
  std::vector<int> pred_node;
  std::vector<int> pred_edge;
};

DijkstraResult dijkstra(const SpatialNetwork& net, const IndexedNetwork& idx,
                        std::span<const double> weights, int source);

struct PathEntry {
  double distance = kInfiniteDistance;
  std::optional<NodeId> predecessor;
};

std::map<NodeId, PathEntry> shortest_paths(const SpatialNetwork& net, WeightAttr attr,
                                           NodeId source);
std::map<NodeId, PathEntry> shortest_paths(const SpatialNetwork& net,
                                           std::span<const double> weights, NodeId source);

// Connected components ignoring edge direction, each sorted by node id and
// ordered by their smallest member.
std::vector<std::vector<NodeId>> connected_components(const SpatialNetwork& net);

}  // namespace spatialgen::core
