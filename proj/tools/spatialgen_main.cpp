#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spatialgen/experiment.hpp"
#include "spatialgen/graph.hpp"
#include "spatialgen/gridgen.hpp"
#include "spatialgen/indicators.hpp"
#include "spatialgen/io.hpp"
#include "spatialgen/netgen.hpp"
#include "spatialgen/perturb.hpp"
#include "spatialgen/pointgen.hpp"
#include "spatialgen/rng.hpp"

namespace {

namespace core = spatialgen::core;
namespace gridgen = spatialgen::gridgen;
namespace netgen = spatialgen::netgen;
namespace pointgen = spatialgen::pointgen;
namespace perturb = spatialgen::perturb;
namespace indicators = spatialgen::indicators;
namespace experiment = spatialgen::experiment;

using experiment::ConfigError;

core::Window parse_window(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string::npos) pos = text.size();
    parts.push_back(core::parse_double(text.substr(start, pos - start)));
    start = pos + 1;
  }
  if (parts.size() != 4) throw ConfigError("window must be xmin,ymin,xmax,ymax");
  return {parts[0], parts[1], parts[2], parts[3]};
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string::npos) pos = text.size();
    out.push_back(core::parse_double(text.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::string record_to_wide_csv(const core::IndicatorRecord& record) {
  std::string header;
  std::string row;
  for (const auto& [name, value] : record.entries()) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += name;
    row += core::format_double(value);
  }
  return header + "\n" + row + "\n";
}

perturb::DeletionStrategy parse_strategy(const std::string& name) {
  if (name == "random") return perturb::DeletionStrategy::random_uniform;
  if (name == "targeted") return perturb::DeletionStrategy::targeted_betweenness_descending;
  throw ConfigError("unknown strategy: " + name);
}

struct GenGridOptions {
  std::string method = "kernel-mixture";
  int size = 50;
  double population = 10000.0;
  double growth = 500.0;
  double alpha = 1.0;
  double beta = 0.1;
  int diffusion_steps = 1;
  int centers = 3;
  double max_value = 1.0;
  double radius = 10.0;
  std::string kernel = "exponential";
  double prob = 0.5;
  bool largest_cluster = false;
  int blocks = 10;
  int min_side = 1;
  int max_side = 5;
  bool no_overlap = false;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_grid(const GenGridOptions& opt) {
  core::RngStream rng(opt.seed);
  core::Grid grid;
  if (opt.method == "reaction-diffusion") {
    gridgen::ReactionDiffusionParams p;
    p.size = opt.size;
    p.total_population = opt.population;
    p.growth_rate = opt.growth;
    p.alpha = opt.alpha;
    p.beta = opt.beta;
    p.diffusion_steps = opt.diffusion_steps;
    grid = gridgen::generate_reaction_diffusion(p, rng);
  } else if (opt.method == "kernel-mixture") {
    gridgen::KernelMixtureParams p;
    p.size = opt.size;
    p.n_centers = opt.centers;
    p.max_value = opt.max_value;
    p.radius = opt.radius;
    if (opt.kernel == "exponential") {
      p.kernel = gridgen::KernelMixtureParams::Kernel::exponential;
    } else if (opt.kernel == "gaussian") {
      p.kernel = gridgen::KernelMixtureParams::Kernel::gaussian;
    } else {
      throw ConfigError("unknown kernel: " + opt.kernel);
    }
    grid = gridgen::generate_kernel_mixture(p, rng);
  } else if (opt.method == "percolation") {
    gridgen::PercolationParams p;
    p.size = opt.size;
    p.occupation_probability = opt.prob;
    p.keep_largest_cluster_only = opt.largest_cluster;
    grid = gridgen::generate_percolation(p, rng);
  } else if (opt.method == "blocks") {
    gridgen::BlocksParams p;
    p.size = opt.size;
    p.n_blocks = opt.blocks;
    p.min_block_side = opt.min_side;
    p.max_block_side = opt.max_side;
    p.allow_overlap = !opt.no_overlap;
    grid = gridgen::generate_blocks(p, rng);
  } else {
    throw ConfigError("unknown grid method: " + opt.method);
  }
  core::write_grid_csv(grid, opt.out);
}

struct GenNetworkOptions {
  std::string method = "tree";
  int nodes = 20;
  std::string window = "0,0,1,1";
  double keep_probability = 0.5;
  double gamma = 1.0;
  double interaction_range = 0.0;  // 0 = window diagonal / 4
  int extra_edges = -1;            // -1 = node count
  double lambda = 0.1;
  int terminals = 2;
  int iterations = 100;
  double flow_amplification = 1.8;
  double decay = 0.5;
  double time_step = 0.1;
  double input_flow = 1.0;
  double keep_threshold = 0.1;
  int cities = 10;
  double largest_population = 100.0;
  double zipf = 1.0;
  double min_separation = 0.0;
  std::string network_kind = "tree";
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_network(const GenNetworkOptions& opt) {
  core::RngStream rng(opt.seed);
  const core::Window window = parse_window(opt.window);
  core::SpatialNetwork net;
  const auto uniform_nodes = [&]() {
    std::vector<core::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(opt.nodes));
    for (int i = 0; i < opt.nodes; ++i) {
      nodes.push_back({static_cast<core::NodeId>(i), rng.uniform(window.xmin, window.xmax),
                       rng.uniform(window.ymin, window.ymax), 1.0});
    }
    return nodes;
  };

  if (opt.method == "tree") {
    net = netgen::generate_tree_network(opt.nodes, window, rng);
  } else if (opt.method == "random-planar") {
    net = netgen::generate_random_planar(opt.nodes, opt.keep_probability, window, rng);
  } else if (opt.method == "gravity") {
    netgen::GravityParams p;
    p.gamma = opt.gamma;
    p.interaction_range =
        opt.interaction_range > 0.0 ? opt.interaction_range : window.diagonal() / 4.0;
    p.extra_edges = opt.extra_edges >= 0 ? opt.extra_edges : opt.nodes;
    net = netgen::generate_gravity_network(uniform_nodes(), p);
  } else if (opt.method == "cost-benefit") {
    netgen::CostBenefitParams p;
    p.lambda = opt.lambda;
    p.gamma = opt.gamma;
    net = netgen::generate_cost_benefit_network(uniform_nodes(), p);
  } else if (opt.method == "slime-mould") {
    const core::SpatialNetwork substrate =
        netgen::generate_random_planar(opt.nodes, 1.0, window, rng);
    netgen::SlimeMouldParams p;
    p.iterations = opt.iterations;
    p.flow_amplification = opt.flow_amplification;
    p.decay = opt.decay;
    p.time_step = opt.time_step;
    p.input_flow = opt.input_flow;
    p.keep_threshold = opt.keep_threshold;
    for (int t = 0; t < std::min(opt.terminals, opt.nodes); ++t) {
      p.terminals.push_back(static_cast<core::NodeId>(t));
    }
    net = netgen::generate_slime_mould(substrate, p, rng);
  } else if (opt.method == "city-system") {
    netgen::CitySystemParams p;
    p.n_cities = opt.cities;
    p.largest_population = opt.largest_population;
    p.zipf_exponent = opt.zipf;
    p.min_separation = opt.min_separation;
    if (opt.network_kind == "tree") {
      p.network_kind = netgen::CitySystemParams::NetworkKind::tree;
    } else if (opt.network_kind == "gravity") {
      p.network_kind = netgen::CitySystemParams::NetworkKind::gravity;
    } else if (opt.network_kind == "complete") {
      p.network_kind = netgen::CitySystemParams::NetworkKind::complete;
    } else {
      throw ConfigError("unknown network kind: " + opt.network_kind);
    }
    net = netgen::generate_city_system(p, window, rng);
  } else {
    throw ConfigError("unknown network method: " + opt.method);
  }
  core::write_network_json(net, opt.out);
}

struct GenPointsOptions {
  std::string method = "homogeneous";
  double intensity = 100.0;
  std::string intensity_grid;
  std::string window = "0,0,1,1";
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_points(const GenPointsOptions& opt) {
  core::RngStream rng(opt.seed);
  core::PointSet points;
  if (opt.method == "homogeneous") {
    points = pointgen::sample_homogeneous_poisson(opt.intensity, parse_window(opt.window), rng);
  } else if (opt.method == "inhomogeneous") {
    if (opt.intensity_grid.empty()) {
      throw ConfigError("inhomogeneous sampling needs --intensity-grid");
    }
    points = pointgen::sample_inhomogeneous_poisson(core::read_grid_csv(opt.intensity_grid), rng);
  } else {
    throw ConfigError("unknown points method: " + opt.method);
  }
  core::write_pointset_csv(points, opt.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial synthetic data, perturbation, indicators, and experiments"};
  app.require_subcommand(1);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Generate synthetic configurations");
  gen->require_subcommand(1);

  GenGridOptions gg;
  CLI::App* gen_grid = gen->add_subcommand("grid", "Generate a raster");
  gen_grid->add_option("--method", gg.method,
                       "reaction-diffusion | kernel-mixture | percolation | blocks");
  gen_grid->add_option("--size", gg.size, "Grid side in cells");
  gen_grid->add_option("--population", gg.population, "Target total mass");
  gen_grid->add_option("--growth", gg.growth, "Mass added per macro step");
  gen_grid->add_option("--alpha", gg.alpha, "Preferential attachment exponent");
  gen_grid->add_option("--beta", gg.beta, "Diffused fraction per sweep");
  gen_grid->add_option("--diffusion-steps", gg.diffusion_steps, "Sweeps per macro step");
  gen_grid->add_option("--centers", gg.centers, "Kernel centers");
  gen_grid->add_option("--max-value", gg.max_value, "Kernel amplitude");
  gen_grid->add_option("--radius", gg.radius, "Kernel radius (cells)");
  gen_grid->add_option("--kernel", gg.kernel, "exponential | gaussian");
  gen_grid->add_option("--prob", gg.prob, "Occupation probability");
  gen_grid->add_flag("--largest-cluster", gg.largest_cluster, "Keep largest cluster only");
  gen_grid->add_option("--blocks", gg.blocks, "Number of blocks");
  gen_grid->add_option("--min-side", gg.min_side, "Minimum block side");
  gen_grid->add_option("--max-side", gg.max_side, "Maximum block side");
  gen_grid->add_flag("--no-overlap", gg.no_overlap, "Reject overlapping blocks");
  gen_grid->add_option("--seed", gg.seed, "RNG seed")->required();
  gen_grid->add_option("--out", gg.out, "Output CSV path")->required();

  GenNetworkOptions gn;
  CLI::App* gen_network = gen->add_subcommand("network", "Generate a spatial network");
  gen_network->add_option("--method", gn.method,
                          "tree | random-planar | gravity | cost-benefit | slime-mould | "
                          "city-system");
  gen_network->add_option("--nodes", gn.nodes, "Node count");
  gen_network->add_option("--window", gn.window, "xmin,ymin,xmax,ymax");
  gen_network->add_option("--keep-probability", gn.keep_probability,
                          "Non-tree Delaunay edge keep probability");
  gen_network->add_option("--gamma", gn.gamma, "Weight-product exponent");
  gen_network->add_option("--interaction-range", gn.interaction_range,
                          "Gravity decay scale (default window diagonal / 4)");
  gen_network->add_option("--extra-edges", gn.extra_edges,
                          "Gravity extra edges (default node count)");
  gen_network->add_option("--lambda", gn.lambda, "Cost per unit length");
  gen_network->add_option("--terminals", gn.terminals, "Slime mould terminal count");
  gen_network->add_option("--iterations", gn.iterations, "Slime mould iterations");
  gen_network->add_option("--flow-amplification", gn.flow_amplification,
                          "Slime mould flow exponent");
  gen_network->add_option("--decay", gn.decay, "Slime mould conductivity decay");
  gen_network->add_option("--time-step", gn.time_step, "Slime mould time step");
  gen_network->add_option("--input-flow", gn.input_flow, "Slime mould source flow");
  gen_network->add_option("--keep-threshold", gn.keep_threshold,
                          "Slime mould conductivity cutoff");
  gen_network->add_option("--cities", gn.cities, "City count");
  gen_network->add_option("--largest-population", gn.largest_population, "Rank-1 population");
  gen_network->add_option("--zipf", gn.zipf, "Rank-size exponent");
  gen_network->add_option("--min-separation", gn.min_separation, "Minimum city spacing");
  gen_network->add_option("--network-kind", gn.network_kind, "tree | gravity | complete");
  gen_network->add_option("--seed", gn.seed, "RNG seed")->required();
  gen_network->add_option("--out", gn.out, "Output JSON path")->required();

  GenPointsOptions gp;
  CLI::App* gen_points = gen->add_subcommand("points", "Generate a point pattern");
  gen_points->add_option("--method", gp.method, "homogeneous | inhomogeneous");
  gen_points->add_option("--intensity", gp.intensity, "Points per unit area");
  gen_points->add_option("--intensity-grid", gp.intensity_grid, "Per-cell intensity CSV");
  gen_points->add_option("--window", gp.window, "xmin,ymin,xmax,ymax");
  gen_points->add_option("--seed", gp.seed, "RNG seed")->required();
  gen_points->add_option("--out", gp.out, "Output CSV path")->required();

  // perturb
  CLI::App* pert = app.add_subcommand("perturb", "Perturb configurations");
  pert->require_subcommand(1);

  std::string pg_in, pg_out;
  double pg_noise = -1.0, pg_intensity = -1.0, pg_delta = 1.0;
  std::uint64_t pg_seed = 0;
  CLI::App* pert_grid = pert->add_subcommand("grid", "Perturb a raster");
  pert_grid->add_option("--in", pg_in, "Input grid CSV")->required();
  pert_grid->add_option("--noise-sigma", pg_noise, "Gaussian noise scale");
  pert_grid->add_option("--poisson-intensity", pg_intensity, "Poisson point intensity");
  pert_grid->add_option("--poisson-delta", pg_delta, "Mass added per point");
  pert_grid->add_option("--seed", pg_seed, "RNG seed")->required();
  pert_grid->add_option("--out", pg_out, "Output CSV path")->required();

  std::string pn_in, pn_out, pn_strategy = "random";
  int pn_delete_nodes = -1, pn_delete_links = -1;
  double pn_jitter = -1.0;
  std::uint64_t pn_seed = 0;
  CLI::App* pert_network = pert->add_subcommand("network", "Perturb a network");
  pert_network->add_option("--in", pn_in, "Input network JSON")->required();
  pert_network->add_option("--delete-nodes", pn_delete_nodes, "Nodes to remove");
  pert_network->add_option("--delete-links", pn_delete_links, "Links to remove");
  pert_network->add_option("--strategy", pn_strategy, "random | targeted");
  pert_network->add_option("--jitter-sigma", pn_jitter, "Coordinate noise scale");
  pert_network->add_option("--seed", pn_seed, "RNG seed")->required();
  pert_network->add_option("--out", pn_out, "Output JSON path")->required();

  // measure
  CLI::App* measure = app.add_subcommand("measure", "Compute indicators");
  measure->require_subcommand(1);

  std::string mg_in, mg_out;
  CLI::App* measure_grid = measure->add_subcommand("grid", "Raster morphology");
  measure_grid->add_option("--in", mg_in, "Input grid CSV")->required();
  measure_grid->add_option("--out", mg_out, "Output CSV path")->required();

  std::string mn_in, mn_out, mn_loading = "none";
  double mn_od_total = 100.0, mn_od_range = 0.0, mn_bpr_a = 0.15, mn_bpr_b = 4.0;
  double mn_gap = 1e-4;
  int mn_iterations = 500;
  CLI::App* measure_network = measure->add_subcommand("network", "Network measures");
  measure_network->add_option("--in", mn_in, "Input network JSON")->required();
  measure_network->add_option("--loading", mn_loading, "none | aon | ue");
  measure_network->add_option("--od-total", mn_od_total, "Total gravity OD demand");
  measure_network->add_option("--od-range", mn_od_range,
                              "Gravity OD decay scale (default network diagonal / 4)");
  measure_network->add_option("--bpr-a", mn_bpr_a, "BPR coefficient");
  measure_network->add_option("--bpr-b", mn_bpr_b, "BPR exponent");
  measure_network->add_option("--ue-iterations", mn_iterations, "MSA iteration cap");
  measure_network->add_option("--ue-gap", mn_gap, "Relative gap tolerance");
  measure_network->add_option("--out", mn_out, "Output CSV path")->required();

  std::string mp_in, mp_out, mp_radii;
  CLI::App* measure_points = measure->add_subcommand("points", "Point pattern measures");
  measure_points->add_option("--in", mp_in, "Input point CSV")->required();
  measure_points->add_option("--radii", mp_radii, "Comma-separated Ripley K radii");
  measure_points->add_option("--out", mp_out, "Output CSV path")->required();

  // experiment
  std::string ex_config, ex_out;
  long long ex_replications = -1;
  std::uint64_t ex_base_seed = 0;
  bool ex_base_seed_set = false;
  CLI::App* exp = app.add_subcommand("experiment", "Run a replicated sensitivity experiment");
  exp->add_option("--config", ex_config, "Experiment config JSON")->required();
  exp->add_option("--out", ex_out, "Output CSV path")->required();
  exp->add_option("--replications", ex_replications, "Override config replications");
  exp->add_option("--base-seed", ex_base_seed, "Override config base seed")
      ->each([&](const std::string&) { ex_base_seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (gen_grid->parsed()) {
      run_gen_grid(gg);
    } else if (gen_network->parsed()) {
      run_gen_network(gn);
    } else if (gen_points->parsed()) {
      run_gen_points(gp);
    } else if (pert_grid->parsed()) {
      core::RngStream rng(pg_seed);
      core::Grid grid = core::read_grid_csv(pg_in);
      if (pg_noise >= 0.0) grid = perturb::perturb_grid_noise(grid, pg_noise, rng);
      if (pg_intensity >= 0.0) {
        grid = perturb::perturb_grid_poisson(grid, pg_intensity, pg_delta, rng);
      }
      core::write_grid_csv(grid, pg_out);
    } else if (pert_network->parsed()) {
      core::RngStream rng(pn_seed);
      core::SpatialNetwork net = core::read_network_json(pn_in);
      const perturb::DeletionStrategy strategy = parse_strategy(pn_strategy);
      if (pn_delete_nodes >= 0) net = perturb::delete_nodes(net, pn_delete_nodes, strategy, rng);
      if (pn_delete_links >= 0) net = perturb::delete_links(net, pn_delete_links, strategy, rng);
      if (pn_jitter >= 0.0) net = perturb::jitter_nodes(net, pn_jitter, rng);
      core::write_network_json(net, pn_out);
    } else if (measure_grid->parsed()) {
      const core::Grid grid = core::read_grid_csv(mg_in);
      core::write_text_file(mg_out,
                            record_to_wide_csv(indicators::grid_morphology(grid).to_record()));
    } else if (measure_network->parsed()) {
      const core::SpatialNetwork net = core::read_network_json(mn_in);
      core::IndicatorRecord record = indicators::network_summary(net).to_record();
      if (mn_loading != "none") {
        double range = mn_od_range;
        if (!(range > 0.0)) {
          double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
          if (!net.nodes.empty()) {
            xmin = xmax = net.nodes.front().x;
            ymin = ymax = net.nodes.front().y;
            for (const core::Node& node : net.nodes) {
              xmin = std::min(xmin, node.x);
              xmax = std::max(xmax, node.x);
              ymin = std::min(ymin, node.y);
              ymax = std::max(ymax, node.y);
            }
          }
          range = std::max(1e-12, std::hypot(xmax - xmin, ymax - ymin) / 4.0);
        }
        const indicators::OdMatrix od = indicators::gravity_od(net, mn_od_total, range);
        if (mn_loading == "aon") {
          const auto times = core::edge_weights(net, core::WeightAttr::free_flow_time);
          const auto flows = indicators::assign_all_or_nothing(net, od, times);
          double total_time = 0.0;
          for (std::size_t e = 0; e < flows.size(); ++e) total_time += flows[e] * times[e];
          record.set("totalTravelTime", total_time);
        } else if (mn_loading == "ue") {
          const indicators::UeResult ue = indicators::user_equilibrium(
              net, od, {mn_bpr_a, mn_bpr_b}, mn_iterations, mn_gap);
          double total_time = 0.0;
          for (std::size_t e = 0; e < ue.flows.size(); ++e) {
            total_time += ue.flows[e] * ue.times[e];
          }
          record.set("totalTravelTime", total_time);
          record.set("relativeGap", ue.relative_gap);
          record.set("ueIterations", static_cast<double>(ue.iterations));
        } else {
          throw ConfigError("unknown loading: " + mn_loading);
        }
      }
      core::write_text_file(mn_out, record_to_wide_csv(record));
    } else if (measure_points->parsed()) {
      const core::PointSet points = core::read_pointset_csv(mp_in);
      core::IndicatorRecord record;
      record.set("count", static_cast<double>(points.points.size()));
      if (!mp_radii.empty()) {
        const std::vector<double> radii = parse_double_list(mp_radii);
        for (const auto& [r, k] : indicators::ripley_k(points, radii)) {
          record.set("ripleyK@" + core::format_double(r), k);
        }
      }
      core::write_text_file(mp_out, record_to_wide_csv(record));
    } else if (exp->parsed()) {
      experiment::ExperimentConfig config =
          experiment::parse_config_text(core::read_text_file(ex_config));
      if (ex_replications > 0) config.replications = ex_replications;
      if (ex_base_seed_set) config.base_seed = ex_base_seed;
      const experiment::ResultsTable table = experiment::run_experiment(config);
      core::write_text_file(ex_out, table.to_csv());
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
