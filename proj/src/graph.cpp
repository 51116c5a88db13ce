#include "spatialgen/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace spatialgen::core {

IndexedNetwork index_network(const SpatialNetwork& net) {
  IndexedNetwork idx;
  idx.index_of.reserve(net.nodes.size());
  idx.adjacency.resize(net.nodes.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    if (!idx.index_of.emplace(net.nodes[i].id, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate node id");
    }
  }
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Edge& edge = net.edges[e];
    const auto from = idx.index_of.find(edge.from);
    const auto to = idx.index_of.find(edge.to);
    if (from == idx.index_of.end() || to == idx.index_of.end()) {
      throw std::invalid_argument("dangling edge");
    }
    idx.adjacency[static_cast<std::size_t>(from->second)].push_back(
        {to->second, static_cast<int>(e)});
    if (!net.directed) {
      idx.adjacency[static_cast<std::size_t>(to->second)].push_back(
          {from->second, static_cast<int>(e)});
    }
  }
  return idx;
}

std::vector<double> edge_weights(const SpatialNetwork& net, WeightAttr attr) {
  std::vector<double> w(net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    w[e] = attr == WeightAttr::length ? net.edges[e].length : net.edges[e].free_flow_time;
  }
  return w;
}

DijkstraResult dijkstra(const SpatialNetwork& net, const IndexedNetwork& idx,
                        std::span<const double> weights, int source) {
  const std::size_t n = idx.node_count();
  if (weights.size() != net.edges.size()) throw std::invalid_argument("invalid weight");
  for (const double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("invalid weight");
  }

  DijkstraResult res;
  res.dist.assign(n, kInfiniteDistance);
  res.pred_node.assign(n, -1);
  res.pred_edge.assign(n, -1);

  // Heap entries carry the node id so equal distances pop in id order.
  struct Entry {
    double dist;
    NodeId id;
    int node;
  };
  const auto later = [](const Entry& a, const Entry& b) {
    return a.dist > b.dist || (a.dist == b.dist && a.id > b.id);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);

  std::vector<char> settled(n, 0);
  res.dist[static_cast<std::size_t>(source)] = 0.0;
  heap.push({0.0, net.nodes[static_cast<std::size_t>(source)].id, source});
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    const auto u = static_cast<std::size_t>(top.node);
    if (settled[u]) continue;
    settled[u] = 1;
    for (const IndexedNetwork::Arc& arc : idx.adjacency[u]) {
      const auto v = static_cast<std::size_t>(arc.to);
      if (settled[v]) continue;
      const double cand = res.dist[u] + weights[static_cast<std::size_t>(arc.edge)];
      const NodeId pred_id = net.nodes[u].id;
      const bool better = cand < res.dist[v];
      const bool tie_smaller_pred =
          cand == res.dist[v] && res.pred_node[v] >= 0 &&
          pred_id < net.nodes[static_cast<std::size_t>(res.pred_node[v])].id;
      if (better || tie_smaller_pred) {
        res.dist[v] = cand;
        res.pred_node[v] = top.node;
        res.pred_edge[v] = arc.edge;
        if (better) heap.push({cand, net.nodes[v].id, arc.to});
      }
    }
  }
  return res;
}

namespace {

std::map<NodeId, PathEntry> dijkstra_by_id(const SpatialNetwork& net,
                                           std::span<const double> weights, NodeId source) {
  const IndexedNetwork idx = index_network(net);
  const auto it = idx.index_of.find(source);
  if (it == idx.index_of.end()) throw std::invalid_argument("no such node");
  const DijkstraResult res = dijkstra(net, idx, weights, it->second);

  std::map<NodeId, PathEntry> out;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    PathEntry entry;
    entry.distance = res.dist[i];
    if (res.pred_node[i] >= 0) {
      entry.predecessor = net.nodes[static_cast<std::size_t>(res.pred_node[i])].id;
    }
    out[net.nodes[i].id] = entry;
  }
  return out;
}

}  // namespace

std::map<NodeId, PathEntry> shortest_paths(const SpatialNetwork& net, WeightAttr attr,
                                           NodeId source) {
  return dijkstra_by_id(net, edge_weights(net, attr), source);
}

std::map<NodeId, PathEntry> shortest_paths(const SpatialNetwork& net,
                                           std::span<const double> weights, NodeId source) {
  return dijkstra_by_id(net, weights, source);
}

std::vector<std::vector<NodeId>> connected_components(const SpatialNetwork& net) {
  const std::size_t n = net.nodes.size();
  // Undirected view regardless of the directed flag.
  std::vector<std::vector<int>> adj(n);
  std::unordered_map<NodeId, int> index_of;
  index_of.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_of.emplace(net.nodes[i].id, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate node id");
    }
  }
  for (const Edge& e : net.edges) {
    const auto a = index_of.find(e.from);
    const auto b = index_of.find(e.to);
    if (a == index_of.end() || b == index_of.end()) throw std::invalid_argument("dangling edge");
    adj[static_cast<std::size_t>(a->second)].push_back(b->second);
    adj[static_cast<std::size_t>(b->second)].push_back(a->second);
  }

  std::vector<char> seen(n, 0);
  std::vector<std::vector<NodeId>> components;
  std::vector<int> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> comp;
    stack.push_back(static_cast<int>(start));
    seen[start] = 1;
    while (!stack.empty()) {
      const auto u = static_cast<std::size_t>(stack.back());
      stack.pop_back();
      comp.push_back(net.nodes[u].id);
      for (const int v : adj[u]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

}  // namespace spatialgen::core
