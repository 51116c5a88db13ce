#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "spatialgen/graph.hpp"
#include "spatialgen/indicators.hpp"

namespace spatialgen::indicators {

using core::IndexedNetwork;
using core::NodeId;
using core::SpatialNetwork;

core::IndicatorRecord NetworkSummary::to_record() const {
  core::IndicatorRecord r;
  r.set("nNodes", n_nodes);
  r.set("nEdges", n_edges);
  r.set("totalLength", total_length);
  r.set("nComponents", n_components);
  r.set("cyclomatic", cyclomatic);
  r.set("alphaIndex", alpha_index);
  r.set("gammaIndex", gamma_index);
  r.set("diameter", diameter);
  r.set("meanPathLength", mean_path_length);
  r.set("efficiency", efficiency);
  return r;
}

NetworkSummary network_summary(const SpatialNetwork& net) {
  NetworkSummary s;
  const double n = static_cast<double>(net.nodes.size());
  const double e = static_cast<double>(net.edges.size());
  s.n_nodes = n;
  s.n_edges = e;
  for (const core::Edge& edge : net.edges) s.total_length += edge.length;
  s.n_components = static_cast<double>(core::connected_components(net).size());
  s.cyclomatic = e - n + s.n_components;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.alpha_index = net.nodes.size() >= 3 ? s.cyclomatic / (2.0 * n - 5.0) : nan;
  s.gamma_index = net.nodes.size() >= 3 ? e / (3.0 * (n - 2.0)) : nan;

  if (net.nodes.size() < 2) return s;
  const IndexedNetwork idx = core::index_network(net);
  const std::vector<double> weights = core::edge_weights(net, core::WeightAttr::length);
  double reachable_sum = 0.0;
  std::size_t reachable_pairs = 0;
  double inverse_sum = 0.0;
  for (std::size_t source = 0; source < net.nodes.size(); ++source) {
    const core::DijkstraResult res =
        core::dijkstra(net, idx, weights, static_cast<int>(source));
    for (std::size_t target = 0; target < net.nodes.size(); ++target) {
      if (target == source) continue;
      const double d = res.dist[target];
      if (std::isinf(d)) continue;
      reachable_sum += d;
      ++reachable_pairs;
      s.diameter = std::max(s.diameter, d);
      inverse_sum += 1.0 / d;
    }
  }
  if (reachable_pairs > 0) {
    s.mean_path_length = reachable_sum / static_cast<double>(reachable_pairs);
  }
  s.efficiency = inverse_sum / (n * (n - 1.0));
  return s;
}

namespace {

// Dijkstra with shortest-path counts and predecessor lists for Brandes.
struct SpDag {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<std::vector<std::pair<int, int>>> preds;  // (node, edge)
  std::vector<int> settle_order;
};

SpDag shortest_path_dag(const SpatialNetwork& net, const IndexedNetwork& idx,
                        const std::vector<double>& weights, int source) {
  const std::size_t n = idx.node_count();
  SpDag dag;
  dag.dist.assign(n, core::kInfiniteDistance);
  dag.sigma.assign(n, 0.0);
  dag.preds.assign(n, {});
  dag.settle_order.reserve(n);

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

  dag.dist[static_cast<std::size_t>(source)] = 0.0;
  dag.sigma[static_cast<std::size_t>(source)] = 1.0;
  heap.push({0.0, net.nodes[static_cast<std::size_t>(source)].id, source});
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    const auto u = static_cast<std::size_t>(top.node);
    if (settled[u]) continue;
    settled[u] = 1;
    dag.settle_order.push_back(top.node);
    for (const IndexedNetwork::Arc& arc : idx.adjacency[u]) {
      const auto v = static_cast<std::size_t>(arc.to);
      if (settled[v]) continue;
      const double cand = dag.dist[u] + weights[static_cast<std::size_t>(arc.edge)];
      const double tol = 1e-12 * std::max(1.0, std::fabs(cand));
      if (cand < dag.dist[v] - tol) {
        dag.dist[v] = cand;
        dag.sigma[v] = dag.sigma[u];
        dag.preds[v].clear();
        dag.preds[v].push_back({top.node, arc.edge});
        heap.push({cand, net.nodes[v].id, arc.to});
      } else if (std::fabs(cand - dag.dist[v]) <= tol) {
        dag.sigma[v] += dag.sigma[u];
        dag.preds[v].push_back({top.node, arc.edge});
      }
    }
  }
  return dag;
}

// Brandes dependency accumulation; node_acc/edge_acc may be null.
void accumulate_betweenness(const SpatialNetwork& net, std::vector<double>* node_acc,
                            std::vector<double>* edge_acc) {
  const IndexedNetwork idx = core::index_network(net);
  const std::vector<double> weights = core::edge_weights(net, core::WeightAttr::length);
  const std::size_t n = idx.node_count();
  if (node_acc) node_acc->assign(n, 0.0);
  if (edge_acc) edge_acc->assign(net.edges.size(), 0.0);

  std::vector<double> delta(n);
  for (std::size_t source = 0; source < n; ++source) {
    const SpDag dag = shortest_path_dag(net, idx, weights, static_cast<int>(source));
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = dag.settle_order.rbegin(); it != dag.settle_order.rend(); ++it) {
      const auto w = static_cast<std::size_t>(*it);
      for (const auto& [pred, edge] : dag.preds[w]) {
        const double share = dag.sigma[static_cast<std::size_t>(pred)] / dag.sigma[w] *
                             (1.0 + delta[w]);
        delta[static_cast<std::size_t>(pred)] += share;
        if (edge_acc) (*edge_acc)[static_cast<std::size_t>(edge)] += share;
      }
      if (w != source && node_acc) (*node_acc)[w] += delta[w];
    }
  }

  // Each unordered pair was counted from both endpoints on undirected graphs.
  const double scale = net.directed ? 1.0 : 0.5;
  if (node_acc) {
    for (double& v : *node_acc) v *= scale;
  }
  if (edge_acc) {
    for (double& v : *edge_acc) v *= scale;
  }
}

}  // namespace

std::map<NodeId, double> betweenness(const SpatialNetwork& net) {
  std::vector<double> acc;
  accumulate_betweenness(net, &acc, nullptr);
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) out[net.nodes[i].id] = acc[i];
  return out;
}

std::vector<double> edge_betweenness(const SpatialNetwork& net) {
  std::vector<double> acc;
  accumulate_betweenness(net, nullptr, &acc);
  return acc;
}

}  // namespace spatialgen::indicators
