#include "spatialgen/perturb.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "spatialgen/indicators.hpp"
#include "spatialgen/pointgen.hpp"

namespace spatialgen::perturb {

using core::Grid;
using core::NodeId;
using core::RngStream;
using core::SpatialNetwork;

Grid perturb_grid_noise(const Grid& grid, double sigma, RngStream& rng) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (sigma == 0.0) return grid;
  Grid out = grid;
  for (double& v : out.values) {
    v = std::max(0.0, v + sigma * rng.next_normal());
  }
  return out;
}

Grid perturb_grid_poisson(const Grid& grid, double intensity, double delta, RngStream& rng) {
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  Grid out = grid;
  const core::Window window{0.0, 0.0, grid.extent_x(), grid.extent_y()};
  const core::PointSet points = pointgen::sample_homogeneous_poisson(intensity, window, rng);
  for (const core::Point& p : points.points) {
    const auto [col, row] = pointgen::cell_of_point(grid, p);
    out.at(col, row) += delta;
  }
  return out;
}

namespace {

// First k entries of a partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    RngStream& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

SpatialNetwork delete_nodes(const SpatialNetwork& net, int k, DeletionStrategy strategy,
                            RngStream& rng) {
  if (k < 0 || static_cast<std::size_t>(k) > net.nodes.size()) {
    throw std::invalid_argument("deletion count exceeds node count");
  }
  std::vector<std::size_t> doomed;
  if (strategy == DeletionStrategy::random_uniform) {
    doomed = sample_without_replacement(net.nodes.size(), static_cast<std::size_t>(k), rng);
  } else {
    const auto centrality = indicators::betweenness(net);
    std::vector<std::size_t> order(net.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ca = centrality.at(net.nodes[a].id);
      const double cb = centrality.at(net.nodes[b].id);
      if (ca != cb) return ca > cb;
      return net.nodes[a].id < net.nodes[b].id;
    });
    doomed.assign(order.begin(), order.begin() + k);
  }

  std::unordered_set<NodeId> gone;
  for (const std::size_t i : doomed) gone.insert(net.nodes[i].id);

  SpatialNetwork out;
  out.directed = net.directed;
  for (const core::Node& n : net.nodes) {
    if (!gone.contains(n.id)) out.nodes.push_back(n);
  }
  for (const core::Edge& e : net.edges) {
    if (!gone.contains(e.from) && !gone.contains(e.to)) out.edges.push_back(e);
  }
  return out;
}

SpatialNetwork delete_links(const SpatialNetwork& net, int k, DeletionStrategy strategy,
                            RngStream& rng) {
  if (k < 0 || static_cast<std::size_t>(k) > net.edges.size()) {
    throw std::invalid_argument("deletion count exceeds edge count");
  }
  std::vector<std::size_t> doomed;
  if (strategy == DeletionStrategy::random_uniform) {
    doomed = sample_without_replacement(net.edges.size(), static_cast<std::size_t>(k), rng);
  } else {
    const std::vector<double> centrality = indicators::edge_betweenness(net);
    std::vector<std::size_t> order(net.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (centrality[a] != centrality[b]) return centrality[a] > centrality[b];
      const std::pair<core::NodeId, core::NodeId> ka{
          std::min(net.edges[a].from, net.edges[a].to),
          std::max(net.edges[a].from, net.edges[a].to)};
      const std::pair<core::NodeId, core::NodeId> kb{
          std::min(net.edges[b].from, net.edges[b].to),
          std::max(net.edges[b].from, net.edges[b].to)};
      if (ka != kb) return ka < kb;
      return a < b;
    });
    doomed.assign(order.begin(), order.begin() + k);
  }

  std::vector<char> gone(net.edges.size(), 0);
  for (const std::size_t e : doomed) gone[e] = 1;

  SpatialNetwork out;
  out.directed = net.directed;
  out.nodes = net.nodes;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    if (!gone[e]) out.edges.push_back(net.edges[e]);
  }
  return out;
}

SpatialNetwork jitter_nodes(const SpatialNetwork& net, double sigma, RngStream& rng) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (sigma == 0.0) return net;

  SpatialNetwork out = net;
  for (core::Node& n : out.nodes) {
    n.x += sigma * rng.next_normal();
    n.y += sigma * rng.next_normal();
  }
  std::unordered_map<NodeId, core::Point> positions;
  positions.reserve(out.nodes.size());
  for (const core::Node& n : out.nodes) positions[n.id] = n.position();
  for (core::Edge& e : out.edges) {
    e.length = core::distance(positions.at(e.from), positions.at(e.to));
  }
  return out;
}

}  // namespace spatialgen::perturb
