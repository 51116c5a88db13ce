#include "spatialgen/network.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace spatialgen::core {

void validate(const SpatialNetwork& net) {
  std::unordered_set<NodeId> ids;
  ids.reserve(net.nodes.size());
  std::unordered_map<NodeId, Point> positions;
  positions.reserve(net.nodes.size());
  for (const Node& n : net.nodes) {
    if (!ids.insert(n.id).second) throw std::invalid_argument("duplicate node id");
    if (!(n.weight >= 0.0)) throw std::invalid_argument("negative node weight");
    positions[n.id] = {n.x, n.y};
  }
  for (const Edge& e : net.edges) {
    const auto a = positions.find(e.from);
    const auto b = positions.find(e.to);
    if (a == positions.end() || b == positions.end()) {
      throw std::invalid_argument("dangling edge");
    }
    if (e.from == e.to) throw std::invalid_argument("self-loop");
    if (!(e.length > 0.0)) throw std::invalid_argument("non-positive edge length");
    if (!(e.capacity > 0.0)) throw std::invalid_argument("non-positive edge capacity");
    if (!(e.free_flow_time > 0.0)) throw std::invalid_argument("non-positive free-flow time");
    if (e.length < distance(a->second, b->second) - 1e-9) {
      throw std::invalid_argument("edge shorter than straight-line distance");
    }
  }
}

SpatialNetwork make_geometric_network(std::span<const Point> positions,
                                      std::span<const std::pair<int, int>> edge_indices,
                                      std::span<const double> weights) {
  SpatialNetwork net;
  net.nodes.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double w = i < weights.size() ? weights[i] : 1.0;
    net.nodes.push_back({static_cast<NodeId>(i), positions[i].x, positions[i].y, w});
  }
  net.edges.reserve(edge_indices.size());
  for (const auto& [a, b] : edge_indices) {
    const double len = distance(positions[static_cast<std::size_t>(a)],
                                positions[static_cast<std::size_t>(b)]);
    net.edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), len, 1.0, len});
  }
  return net;
}

}  // namespace spatialgen::core
