#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/network.hpp"
#include "spatialgen/pointset.hpp"
#include "spatialgen/record.hpp"

namespace spatialgen::indicators {

// Mesoscale morphology of a raster. With p_i = x_i / sum(x):
//   mass        total value
//   centroid    mass-weighted mean cell center
//   dispersion  sqrt(sum p_i |c_i - centroid|^2)
//   moran       Moran index with weights 1/d_ij (0 for constant grids)
//   entropy     -sum p_i ln p_i / ln(n), in [0,1]
//   rankSize    OLS slope of ln(value) on ln(rank), positive cells only
//   avgDistance sum_{i!=j} p_i p_j d_ij / diagonal
// A zero-mass grid reports 0 for every distribution indicator.
struct MorphologyRecord {
  double mass = 0.0;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  double dispersion = 0.0;
  double moran = 0.0;
  double entropy = 0.0;
  double rank_size_slope = 0.0;
  double avg_distance = 0.0;

  core::IndicatorRecord to_record() const;
};

MorphologyRecord grid_morphology(const core::Grid& grid);

// Ripley K estimator without edge correction:
// K(r) = A / (n (n-1)) * #[ordered pairs closer than r].
std::vector<std::pair<double, double>> ripley_k(const core::PointSet& points,
                                                std::span<const double> radii);

struct NetworkSummary {
  double n_nodes = 0.0;
  double n_edges = 0.0;
  double total_length = 0.0;
  double n_components = 0.0;
  double cyclomatic = 0.0;       // E - N + C
  double alpha_index = 0.0;      // cyclomatic / (2N - 5), NaN below 3 nodes
  double gamma_index = 0.0;      // E / (3 (N - 2)), NaN below 3 nodes
  double diameter = 0.0;         // over reachable pairs, length-weighted
  double mean_path_length = 0.0;
  double efficiency = 0.0;       // mean of 1/d over ordered pairs, 1/inf = 0

  core::IndicatorRecord to_record() const;
};

NetworkSummary network_summary(const core::SpatialNetwork& net);

// Brandes betweenness with exact shortest-path multiplicities over unordered
// source-target pairs, endpoints excluded, no normalization.
std::map<core::NodeId, double> betweenness(const core::SpatialNetwork& net);

// Same accumulation per edge, indexed like net.edges.
std::vector<double> edge_betweenness(const core::SpatialNetwork& net);

struct OdEntry {
  core::NodeId origin = 0;
  core::NodeId destination = 0;
  double demand = 0.0;
};
using OdMatrix = std::vector<OdEntry>;

struct BprParams {
  double a = 0.15;
  double b = 4.0;
};

// Loads each origin-destination demand entirely onto its minimum-time path.
// Returns per-edge flows indexed like net.edges; an unreachable pair throws
// "infeasible demand".
std::vector<double> assign_all_or_nothing(const core::SpatialNetwork& net, const OdMatrix& od,
                                          std::span<const double> times);

// Static user equilibrium by the method of successive averages under BPR
// link costs t = t0 (1 + a (f/c)^b). Keeps the flow pattern with the best
// (smallest) relative gap seen.
struct UeResult {
  std::vector<double> flows;
  std::vector<double> times;
  double relative_gap = 0.0;
  int iterations = 0;
};

UeResult user_equilibrium(const core::SpatialNetwork& net, const OdMatrix& od,
                          const BprParams& bpr, int max_iterations, double gap_tolerance);

// Gravity-style demand helper: demand between every ordered node pair
// proportional to w_i w_j exp(-d_ij / range), scaled to the given total.
OdMatrix gravity_od(const core::SpatialNetwork& net, double total_demand, double range);

}  // namespace spatialgen::indicators
