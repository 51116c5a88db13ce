#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "spatialgen/graph.hpp"
#include "spatialgen/indicators.hpp"

namespace spatialgen::indicators {

using core::IndexedNetwork;
using core::NodeId;
using core::SpatialNetwork;

namespace {

void check_od(const SpatialNetwork& net, const IndexedNetwork& idx, const OdMatrix& od) {
  for (const OdEntry& entry : od) {
    if (entry.origin == entry.destination) {
      throw std::invalid_argument("origin equals destination");
    }
    if (entry.demand < 0.0) throw std::invalid_argument("negative demand");
    if (!idx.index_of.contains(entry.origin) || !idx.index_of.contains(entry.destination)) {
      throw std::invalid_argument("no such node");
    }
  }
}

// Loads demands onto minimum-cost paths; optionally reports the total
// shortest-path cost (demand-weighted) used by the equilibrium gap.
std::vector<double> all_or_nothing(const SpatialNetwork& net, const IndexedNetwork& idx,
                                   const OdMatrix& od, std::span<const double> times,
                                   double* shortest_cost_total) {
  std::vector<double> flows(net.edges.size(), 0.0);
  if (shortest_cost_total) *shortest_cost_total = 0.0;

  // Group demands by origin so each origin needs one Dijkstra pass.
  std::unordered_map<NodeId, std::vector<std::size_t>> by_origin;
  for (std::size_t i = 0; i < od.size(); ++i) by_origin[od[i].origin].push_back(i);

  std::vector<NodeId> origins;
  origins.reserve(by_origin.size());
  for (const auto& [origin, _] : by_origin) origins.push_back(origin);
  std::sort(origins.begin(), origins.end());

  for (const NodeId origin : origins) {
    const int source = idx.index_of.at(origin);
    const core::DijkstraResult res = core::dijkstra(net, idx, times, source);
    for (const std::size_t entry_index : by_origin.at(origin)) {
      const OdEntry& entry = od[entry_index];
      const auto dest = static_cast<std::size_t>(idx.index_of.at(entry.destination));
      if (std::isinf(res.dist[dest])) throw std::invalid_argument("infeasible demand");
      if (shortest_cost_total) *shortest_cost_total += entry.demand * res.dist[dest];
      std::size_t at = dest;
      while (res.pred_edge[at] >= 0) {
        flows[static_cast<std::size_t>(res.pred_edge[at])] += entry.demand;
        at = static_cast<std::size_t>(res.pred_node[at]);
      }
    }
  }
  return flows;
}

}  // namespace

std::vector<double> assign_all_or_nothing(const SpatialNetwork& net, const OdMatrix& od,
                                          std::span<const double> times) {
  const IndexedNetwork idx = core::index_network(net);
  check_od(net, idx, od);
  if (times.size() != net.edges.size()) throw std::invalid_argument("invalid weight");
  return all_or_nothing(net, idx, od, times, nullptr);
}

UeResult user_equilibrium(const SpatialNetwork& net, const OdMatrix& od, const BprParams& bpr,
                          int max_iterations, double gap_tolerance) {
  if (bpr.a < 0.0 || bpr.b < 1.0) throw std::invalid_argument("invalid BPR parameters");
  if (max_iterations < 1) throw std::invalid_argument("need at least one iteration");
  const IndexedNetwork idx = core::index_network(net);
  check_od(net, idx, od);

  const std::size_t m = net.edges.size();
  const auto bpr_times = [&](const std::vector<double>& flows) {
    std::vector<double> t(m);
    for (std::size_t e = 0; e < m; ++e) {
      const core::Edge& edge = net.edges[e];
      t[e] = edge.free_flow_time *
             (1.0 + bpr.a * std::pow(flows[e] / edge.capacity, bpr.b));
    }
    return t;
  };

  UeResult best;
  best.flows.assign(m, 0.0);
  best.times = bpr_times(best.flows);
  best.relative_gap = std::numeric_limits<double>::infinity();

  double total_demand = 0.0;
  for (const OdEntry& entry : od) total_demand += entry.demand;
  if (total_demand == 0.0) {
    best.relative_gap = 0.0;
    return best;
  }

  std::vector<double> flows(m, 0.0);
  int executed = 0;
  for (int k = 0; k < max_iterations; ++k) {
    const std::vector<double> times = bpr_times(flows);
    double shortest_cost = 0.0;
    const std::vector<double> target = all_or_nothing(net, idx, od, times, &shortest_cost);
    executed = k + 1;

    double system_cost = 0.0;
    for (std::size_t e = 0; e < m; ++e) system_cost += flows[e] * times[e];
    const double gap = system_cost > 0.0 ? (system_cost - shortest_cost) / system_cost
                                         : std::numeric_limits<double>::infinity();
    if (gap < best.relative_gap) {
      best.relative_gap = gap;
      best.flows = flows;
      best.times = times;
    }
    if (best.relative_gap <= gap_tolerance) break;

    const double step = 1.0 / static_cast<double>(k + 1);
    for (std::size_t e = 0; e < m; ++e) {
      flows[e] += step * (target[e] - flows[e]);
    }
  }
  best.iterations = executed;
  return best;
}

OdMatrix gravity_od(const SpatialNetwork& net, double total_demand, double range) {
  if (total_demand < 0.0) throw std::invalid_argument("negative demand");
  if (!(range > 0.0)) throw std::invalid_argument("range must be > 0");

  OdMatrix od;
  double weight_sum = 0.0;
  for (const core::Node& a : net.nodes) {
    for (const core::Node& b : net.nodes) {
      if (a.id == b.id) continue;
      const double d = core::distance(a.position(), b.position());
      const double w = a.weight * b.weight * std::exp(-d / range);
      od.push_back({a.id, b.id, w});
      weight_sum += w;
    }
  }
  if (weight_sum > 0.0) {
    for (OdEntry& entry : od) entry.demand *= total_demand / weight_sum;
  }
  return od;
}

}  // namespace spatialgen::indicators
