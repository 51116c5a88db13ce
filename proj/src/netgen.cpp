#include "spatialgen/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "spatialgen/graph.hpp"

namespace spatialgen::netgen {

using core::Node;
using core::NodeId;
using core::Point;
using core::RngStream;
using core::SpatialNetwork;
using core::Window;

namespace {

std::vector<Point> uniform_points(int n, const Window& window, RngStream& rng) {
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (Point& p : pts) {
    p.x = rng.uniform(window.xmin, window.xmax);
    p.y = rng.uniform(window.ymin, window.ymax);
  }
  return pts;
}

std::vector<Point> node_positions(const std::vector<Node>& nodes) {
  std::vector<Point> pts;
  pts.reserve(nodes.size());
  for (const Node& n : nodes) pts.push_back({n.x, n.y});
  return pts;
}

SpatialNetwork network_from_nodes(const std::vector<Node>& nodes,
                                  const std::vector<std::pair<int, int>>& edge_indices) {
  SpatialNetwork net;
  net.nodes = nodes;
  net.edges.reserve(edge_indices.size());
  for (const auto& [a, b] : edge_indices) {
    const double len = core::distance(nodes[static_cast<std::size_t>(a)].position(),
                                      nodes[static_cast<std::size_t>(b)].position());
    net.edges.push_back({nodes[static_cast<std::size_t>(a)].id,
                         nodes[static_cast<std::size_t>(b)].id, len, 1.0, len});
  }
  return net;
}

// Delaunay edges that are not in the MST, both as sorted index pairs.
std::vector<std::pair<int, int>> non_tree_candidates(
    const std::vector<std::pair<int, int>>& delaunay_edges,
    const std::vector<std::pair<int, int>>& mst_edges) {
  const std::set<std::pair<int, int>> tree(mst_edges.begin(), mst_edges.end());
  std::vector<std::pair<int, int>> out;
  for (const auto& e : delaunay_edges) {
    if (!tree.contains(e)) out.push_back(e);
  }
  return out;
}

// Dense Gaussian elimination with partial pivoting; a is n*n row-major.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    }
    if (std::fabs(a[pivot * n + col]) < 1e-300) {
      throw std::runtime_error("substrate not connected");
    }
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / a[col * n + col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / a[r * n + r];
  }
  return x;
}

}  // namespace

SpatialNetwork generate_tree_network(int n, const Window& window, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  const std::vector<Point> pts = uniform_points(n, window, rng);
  const auto mst = euclidean_mst(pts);
  return core::make_geometric_network(pts, mst);
}

SpatialNetwork generate_random_planar(int n, double keep_probability, const Window& window,
                                      RngStream& rng) {
  if (n < 3) throw std::invalid_argument("need at least three nodes");
  if (keep_probability < 0.0 || keep_probability > 1.0) {
    throw std::invalid_argument("keep probability must be in [0,1]");
  }
  const std::vector<Point> pts = uniform_points(n, window, rng);
  const auto mst = euclidean_mst(pts);
  const auto tri = delaunay(std::span<const Point>(pts));

  std::vector<std::pair<int, int>> edges = mst;
  for (const auto& e : non_tree_candidates(tri.edges, mst)) {
    if (rng.next_double() < keep_probability) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  return core::make_geometric_network(pts, edges);
}

SpatialNetwork generate_gravity_network(const std::vector<Node>& nodes, const GravityParams& p) {
  if (nodes.size() < 2) throw std::invalid_argument("need at least two nodes");
  if (p.gamma < 0.0 || !(p.interaction_range > 0.0) || p.extra_edges < 0) {
    throw std::invalid_argument("invalid gravity parameters");
  }
  const std::vector<Point> pts = node_positions(nodes);
  std::vector<std::pair<int, int>> edges = euclidean_mst(pts);

  if (nodes.size() >= 3) {
    const auto tri = delaunay(std::span<const Point>(pts));
    auto candidates = non_tree_candidates(tri.edges, edges);
    std::vector<std::pair<double, std::pair<int, int>>> scored;
    scored.reserve(candidates.size());
    for (const auto& e : candidates) {
      const std::size_t i = static_cast<std::size_t>(e.first);
      const std::size_t j = static_cast<std::size_t>(e.second);
      const double d = core::distance(pts[i], pts[j]);
      const double score = std::pow(nodes[i].weight * nodes[j].weight, p.gamma) *
                           std::exp(-d / p.interaction_range) / d;
      scored.emplace_back(score, e);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(p.extra_edges),
                                                   scored.size());
    for (std::size_t k = 0; k < take; ++k) edges.push_back(scored[k].second);
  }
  std::sort(edges.begin(), edges.end());
  return network_from_nodes(nodes, edges);
}

SpatialNetwork generate_cost_benefit_network(const std::vector<Node>& nodes,
                                             const CostBenefitParams& p) {
  if (nodes.size() < 2) throw std::invalid_argument("need at least two nodes");
  if (p.lambda < 0.0 || p.gamma < 0.0) {
    throw std::invalid_argument("invalid cost-benefit parameters");
  }
  const std::vector<Point> pts = node_positions(nodes);
  std::vector<std::pair<int, int>> edges = euclidean_mst(pts);

  if (nodes.size() >= 3) {
    const auto tri = delaunay(std::span<const Point>(pts));
    auto candidates = non_tree_candidates(tri.edges, edges);
    std::vector<char> used(candidates.size(), 0);
    for (;;) {
      double best = 0.0;
      std::ptrdiff_t pick = -1;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (used[k]) continue;
        const std::size_t i = static_cast<std::size_t>(candidates[k].first);
        const std::size_t j = static_cast<std::size_t>(candidates[k].second);
        const double d = core::distance(pts[i], pts[j]);
        const double benefit = std::pow(nodes[i].weight * nodes[j].weight, p.gamma) -
                               p.lambda * d;
        if (pick < 0 || benefit > best ||
            (benefit == best && candidates[k] < candidates[static_cast<std::size_t>(pick)])) {
          best = benefit;
          pick = static_cast<std::ptrdiff_t>(k);
        }
      }
      if (pick < 0 || best <= 0.0) break;
      used[static_cast<std::size_t>(pick)] = 1;
      edges.push_back(candidates[static_cast<std::size_t>(pick)]);
    }
  }
  std::sort(edges.begin(), edges.end());
  return network_from_nodes(nodes, edges);
}

SlimeMouldResult run_slime_mould(const SpatialNetwork& substrate, const SlimeMouldParams& p,
                                 RngStream& rng) {
  if (p.iterations < 1 || !(p.flow_amplification > 0.0) || !(p.decay > 0.0) ||
      !(p.time_step > 0.0) || !(p.input_flow > 0.0) || !(p.keep_threshold > 0.0) ||
      !(p.initial_conductivity > 0.0)) {
    throw std::invalid_argument("invalid slime mould parameters");
  }
  if (p.time_step * p.decay >= 1.0) {
    throw std::invalid_argument("time step times decay must be below 1");
  }
  if (p.terminals.size() < 2) throw std::invalid_argument("need at least two terminals");
  if (core::connected_components(substrate).size() != 1) {
    throw std::invalid_argument("substrate not connected");
  }

  const core::IndexedNetwork idx = core::index_network(substrate);
  std::vector<int> terminal_index;
  terminal_index.reserve(p.terminals.size());
  for (const NodeId t : p.terminals) {
    const auto it = idx.index_of.find(t);
    if (it == idx.index_of.end()) throw std::invalid_argument("no such node");
    terminal_index.push_back(it->second);
  }

  const std::size_t n = substrate.nodes.size();
  const std::size_t m = substrate.edges.size();
  std::vector<double> conductivity(m, p.initial_conductivity);
  std::vector<int> edge_u(m), edge_v(m);
  for (std::size_t e = 0; e < m; ++e) {
    edge_u[e] = idx.index_of.at(substrate.edges[e].from);
    edge_v[e] = idx.index_of.at(substrate.edges[e].to);
  }

  std::vector<double> last_flows(m, 0.0);
  for (int iter = 0; iter < p.iterations; ++iter) {
    const std::size_t si = rng.next_index(terminal_index.size());
    std::size_t sj = rng.next_index(terminal_index.size() - 1);
    if (sj >= si) ++sj;
    const int source = terminal_index[si];
    const int sink = terminal_index[sj];

    // Node potentials from Kirchhoff's law, sink grounded to fix the gauge.
    const std::size_t dim = n - 1;
    const auto reduced = [&](int node) {
      return node < sink ? static_cast<std::size_t>(node) : static_cast<std::size_t>(node) - 1;
    };
    std::vector<double> lap(dim * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);
    for (std::size_t e = 0; e < m; ++e) {
      const double g = conductivity[e] / substrate.edges[e].length;
      const int u = edge_u[e];
      const int v = edge_v[e];
      if (u != sink) lap[reduced(u) * dim + reduced(u)] += g;
      if (v != sink) lap[reduced(v) * dim + reduced(v)] += g;
      if (u != sink && v != sink) {
        lap[reduced(u) * dim + reduced(v)] -= g;
        lap[reduced(v) * dim + reduced(u)] -= g;
      }
    }
    rhs[reduced(source)] = p.input_flow;
    const std::vector<double> solution = solve_dense(std::move(lap), std::move(rhs));

    std::vector<double> potential(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<int>(i) != sink) potential[i] = solution[reduced(static_cast<int>(i))];
    }

    for (std::size_t e = 0; e < m; ++e) {
      const double g = conductivity[e] / substrate.edges[e].length;
      const double signed_flow = g * (potential[static_cast<std::size_t>(edge_u[e])] -
                                      potential[static_cast<std::size_t>(edge_v[e])]);
      last_flows[e] = signed_flow;
      const double q = std::pow(std::fabs(signed_flow), p.flow_amplification);
      conductivity[e] += p.time_step * (q / (1.0 + q) - p.decay * conductivity[e]);
    }
  }

  std::vector<char> keep(m, 0);
  for (std::size_t e = 0; e < m; ++e) {
    if (conductivity[e] >= p.keep_threshold) keep[e] = 1;
  }

  SpatialNetwork pruned;
  pruned.directed = substrate.directed;
  pruned.nodes = substrate.nodes;
  for (std::size_t e = 0; e < m; ++e) {
    if (keep[e]) pruned.edges.push_back(substrate.edges[e]);
  }
  if (core::connected_components(pruned).size() > 1) {
    // Re-add the substrate's length-MST (Kruskal, ties by edge index).
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (substrate.edges[a].length != substrate.edges[b].length) {
        return substrate.edges[a].length < substrate.edges[b].length;
      }
      return a < b;
    });
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (const std::size_t e : order) {
      const int ru = find(edge_u[e]);
      const int rv = find(edge_v[e]);
      if (ru != rv) {
        parent[static_cast<std::size_t>(ru)] = rv;
        if (!keep[e]) {
          keep[e] = 1;
        }
      }
    }
    pruned.edges.clear();
    for (std::size_t e = 0; e < m; ++e) {
      if (keep[e]) pruned.edges.push_back(substrate.edges[e]);
    }
  }
  return {std::move(pruned), std::move(conductivity), std::move(last_flows)};
}

SpatialNetwork generate_slime_mould(const SpatialNetwork& substrate, const SlimeMouldParams& p,
                                    RngStream& rng) {
  return run_slime_mould(substrate, p, rng).network;
}

SpatialNetwork generate_city_system(const CitySystemParams& p, const Window& window,
                                    RngStream& rng) {
  if (p.n_cities < 1) throw std::invalid_argument("need at least one city");
  if (!(p.largest_population > 0.0) || !(p.zipf_exponent > 0.0) || p.min_separation < 0.0) {
    throw std::invalid_argument("invalid city system parameters");
  }

  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(p.n_cities));
  for (int i = 0; i < p.n_cities; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      const Point cand{rng.uniform(window.xmin, window.xmax),
                       rng.uniform(window.ymin, window.ymax)};
      bool ok = true;
      for (const Point& q : pts) {
        if (core::distance(cand, q) < p.min_separation) {
          ok = false;
          break;
        }
      }
      if (ok) {
        pts.push_back(cand);
        placed = true;
      }
    }
    if (!placed) throw std::invalid_argument("cannot place cities");
  }

  std::vector<Node> nodes;
  nodes.reserve(pts.size());
  for (int i = 0; i < p.n_cities; ++i) {
    const double weight =
        p.largest_population * std::pow(static_cast<double>(i + 1), -p.zipf_exponent);
    nodes.push_back({static_cast<NodeId>(i), pts[static_cast<std::size_t>(i)].x,
                     pts[static_cast<std::size_t>(i)].y, weight});
  }

  switch (p.network_kind) {
    case CitySystemParams::NetworkKind::tree:
      return network_from_nodes(nodes, euclidean_mst(pts));
    case CitySystemParams::NetworkKind::gravity: {
      if (p.n_cities < 2) return network_from_nodes(nodes, {});
      GravityParams gp;
      gp.gamma = 1.0;
      gp.interaction_range = window.diagonal() / 4.0;
      gp.extra_edges = p.n_cities;
      return generate_gravity_network(nodes, gp);
    }
    case CitySystemParams::NetworkKind::complete: {
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < p.n_cities; ++i) {
        for (int j = i + 1; j < p.n_cities; ++j) edges.emplace_back(i, j);
      }
      return network_from_nodes(nodes, edges);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace spatialgen::netgen
