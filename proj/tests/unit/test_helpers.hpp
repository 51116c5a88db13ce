#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "spatialgen/graph.hpp"
#include "spatialgen/network.hpp"

namespace testutil {

using spatialgen::core::Edge;
using spatialgen::core::Node;
using spatialgen::core::NodeId;
using spatialgen::core::SpatialNetwork;

// Builds an undirected network from explicit node positions and edges with
// given lengths (capacity 1, free-flow time = length).
inline SpatialNetwork make_net(const std::vector<std::pair<double, double>>& coords,
                               const std::vector<std::tuple<int, int, double>>& edges) {
  SpatialNetwork net;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    net.nodes.push_back({static_cast<NodeId>(i), coords[i].first, coords[i].second, 1.0});
  }
  for (const auto& [a, b, len] : edges) {
    net.edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), len, 1.0, len});
  }
  return net;
}

// All-pairs shortest distances by Floyd-Warshall, independent of the Dijkstra
// implementation under test. Indexing follows node storage order.
inline std::vector<std::vector<double>> floyd_warshall(const SpatialNetwork& net,
                                                       const std::vector<double>& weights) {
  const std::size_t n = net.nodes.size();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[net.nodes[i].id] = i;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const std::size_t a = index.at(net.edges[e].from);
    const std::size_t b = index.at(net.edges[e].to);
    dist[a][b] = std::min(dist[a][b], weights[e]);
    if (!net.directed) dist[b][a] = std::min(dist[b][a], weights[e]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
      }
    }
  }
  return dist;
}

// Component partition by repeated edge scans over a union-find structure.
inline std::vector<std::vector<NodeId>> union_find_components(const SpatialNetwork& net) {
  const std::size_t n = net.nodes.size();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[net.nodes[i].id] = i;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : net.edges) {
    parent[find(index.at(e.from))] = find(index.at(e.to));
  }
  std::map<std::size_t, std::vector<NodeId>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(net.nodes[i].id);
  std::vector<std::vector<NodeId>> out;
  for (auto& [_, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace testutil
