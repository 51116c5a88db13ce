#include "spatialgen/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include "spatialgen/gridgen.hpp"
#include "spatialgen/indicators.hpp"
#include "spatialgen/io.hpp"
#include "spatialgen/netgen.hpp"
#include "spatialgen/perturb.hpp"
#include "spatialgen/pointgen.hpp"
#include "spatialgen/schelling.hpp"

namespace spatialgen::experiment {

namespace {

using nlohmann::json;

enum class Pipeline { grid, network, points };

const std::map<std::string, std::pair<Pipeline, std::set<std::string>>>& generator_registry() {
  static const std::map<std::string, std::pair<Pipeline, std::set<std::string>>> registry = {
      {"reaction-diffusion",
       {Pipeline::grid,
        {"size", "totalPopulation", "growthRate", "alpha", "beta", "diffusionSteps"}}},
      {"kernel-mixture",
       {Pipeline::grid, {"size", "nCenters", "maxValue", "radius", "kernel"}}},
      {"percolation",
       {Pipeline::grid, {"size", "occupationProbability", "keepLargestClusterOnly"}}},
      {"blocks",
       {Pipeline::grid,
        {"size", "nBlocks", "minBlockSide", "maxBlockSide", "allowOverlap"}}},
      {"tree", {Pipeline::network, {"nodes", "window"}}},
      {"random-planar", {Pipeline::network, {"nodes", "keepProbability", "window"}}},
      {"gravity",
       {Pipeline::network, {"nodes", "gamma", "interactionRange", "extraEdges", "window"}}},
      {"cost-benefit", {Pipeline::network, {"nodes", "lambda", "gamma", "window"}}},
      {"slime-mould",
       {Pipeline::network,
        {"nodes", "keepProbability", "terminals", "iterations", "flowAmplification", "decay",
         "timeStep", "inputFlow", "keepThreshold", "window"}}},
      {"city-system",
       {Pipeline::network,
        {"nCities", "largestPopulation", "zipfExponent", "minSeparation", "networkKind",
         "window"}}},
      {"homogeneous-poisson", {Pipeline::points, {"intensity", "window"}}},
      {"inhomogeneous-poisson", {Pipeline::points, {"intensityGrid"}}},
  };
  return registry;
}

const std::set<std::string>& model_keys() {
  static const std::set<std::string> keys = {"tolerance", "occupiedFraction", "mixRatio",
                                             "maxSteps"};
  return keys;
}

const std::set<std::string>& perturbation_keys(Pipeline pipeline, const std::string& kind) {
  static const std::map<std::string, std::pair<Pipeline, std::set<std::string>>> registry = {
      {"grid-noise", {Pipeline::grid, {"sigma"}}},
      {"grid-poisson", {Pipeline::grid, {"intensity", "delta"}}},
      {"delete-nodes", {Pipeline::network, {"count", "strategy"}}},
      {"delete-links", {Pipeline::network, {"count", "strategy"}}},
      {"jitter", {Pipeline::network, {"sigma"}}},
  };
  const auto it = registry.find(kind);
  if (it == registry.end()) throw ConfigError("unknown perturbation kind: " + kind);
  if (it->second.first != pipeline) {
    throw ConfigError("perturbation does not match generator output: " + kind);
  }
  return it->second.second;
}

const std::vector<std::string>& grid_indicator_names() {
  static const std::vector<std::string> names = {"mass",    "centroidX", "centroidY",
                                                 "dispersion", "moran",  "entropy",
                                                 "rankSizeSlope", "avgDistance"};
  return names;
}

const std::vector<std::string>& network_indicator_names() {
  static const std::vector<std::string> names = {
      "nNodes",   "nEdges",    "totalLength",    "nComponents", "cyclomatic",
      "alphaIndex", "gammaIndex", "diameter",    "meanPathLength", "efficiency"};
  return names;
}

const std::vector<std::string>& model_indicator_names() {
  static const std::vector<std::string> names = {"segregationInitial", "segregationFinal",
                                                 "stepsRun"};
  return names;
}

bool contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

void validate_indicator(const std::string& name, Pipeline pipeline, bool has_model) {
  switch (pipeline) {
    case Pipeline::grid:
      if (contains(grid_indicator_names(), name)) return;
      if (has_model && contains(model_indicator_names(), name)) return;
      break;
    case Pipeline::network:
      if (contains(network_indicator_names(), name)) return;
      break;
    case Pipeline::points:
      if (name == "count") return;
      if (name.rfind("ripleyK@", 0) == 0) {
        const double r = core::parse_double(name.substr(8));
        if (r > 0.0) return;
      }
      break;
  }
  throw ConfigError("unknown indicator: " + name);
}

double num(const json& params, const char* key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!it->is_number()) throw ConfigError(std::string("parameter must be numeric: ") + key);
  return it->get<double>();
}

int int_num(const json& params, const char* key, int fallback) {
  return static_cast<int>(num(params, key, fallback));
}

core::Window window_param(const json& params) {
  const auto it = params.find("window");
  if (it == params.end()) return {0.0, 0.0, 1.0, 1.0};
  if (!it->is_array() || it->size() != 4) {
    throw ConfigError("window must be [xmin, ymin, xmax, ymax]");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>(),
          (*it)[3].get<double>()};
}

core::Grid make_grid(const GeneratorSpec& spec, core::RngStream& rng) {
  const json& p = spec.params;
  if (spec.kind == "reaction-diffusion") {
    gridgen::ReactionDiffusionParams rd;
    rd.size = int_num(p, "size", rd.size);
    rd.total_population = num(p, "totalPopulation", rd.total_population);
    rd.growth_rate = num(p, "growthRate", rd.growth_rate);
    rd.alpha = num(p, "alpha", rd.alpha);
    rd.beta = num(p, "beta", rd.beta);
    rd.diffusion_steps = int_num(p, "diffusionSteps", rd.diffusion_steps);
    return gridgen::generate_reaction_diffusion(rd, rng);
  }
  if (spec.kind == "kernel-mixture") {
    gridgen::KernelMixtureParams km;
    km.size = int_num(p, "size", km.size);
    km.n_centers = int_num(p, "nCenters", km.n_centers);
    km.max_value = num(p, "maxValue", km.max_value);
    km.radius = num(p, "radius", km.radius);
    const std::string kernel = p.value("kernel", "exponential");
    if (kernel == "exponential") {
      km.kernel = gridgen::KernelMixtureParams::Kernel::exponential;
    } else if (kernel == "gaussian") {
      km.kernel = gridgen::KernelMixtureParams::Kernel::gaussian;
    } else {
      throw ConfigError("unknown kernel: " + kernel);
    }
    return gridgen::generate_kernel_mixture(km, rng);
  }
  if (spec.kind == "percolation") {
    gridgen::PercolationParams pc;
    pc.size = int_num(p, "size", pc.size);
    pc.occupation_probability = num(p, "occupationProbability", pc.occupation_probability);
    pc.keep_largest_cluster_only = p.value("keepLargestClusterOnly", false);
    return gridgen::generate_percolation(pc, rng);
  }
  gridgen::BlocksParams bl;
  bl.size = int_num(p, "size", bl.size);
  bl.n_blocks = int_num(p, "nBlocks", bl.n_blocks);
  bl.min_block_side = int_num(p, "minBlockSide", bl.min_block_side);
  bl.max_block_side = int_num(p, "maxBlockSide", bl.max_block_side);
  bl.allow_overlap = p.value("allowOverlap", true);
  return gridgen::generate_blocks(bl, rng);
}

core::SpatialNetwork make_network(const GeneratorSpec& spec, core::RngStream& rng) {
  const json& p = spec.params;
  const core::Window window = window_param(p);
  if (spec.kind == "tree") {
    return netgen::generate_tree_network(int_num(p, "nodes", 20), window, rng);
  }
  if (spec.kind == "random-planar") {
    return netgen::generate_random_planar(int_num(p, "nodes", 20),
                                          num(p, "keepProbability", 0.5), window, rng);
  }
  if (spec.kind == "gravity" || spec.kind == "cost-benefit") {
    const int n = int_num(p, "nodes", 20);
    if (n < 2) throw ConfigError("need at least two nodes");
    std::vector<core::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      nodes.push_back({static_cast<core::NodeId>(i), rng.uniform(window.xmin, window.xmax),
                       rng.uniform(window.ymin, window.ymax), 1.0});
    }
    if (spec.kind == "gravity") {
      netgen::GravityParams gp;
      gp.gamma = num(p, "gamma", gp.gamma);
      gp.interaction_range = num(p, "interactionRange", window.diagonal() / 4.0);
      gp.extra_edges = int_num(p, "extraEdges", n);
      return netgen::generate_gravity_network(nodes, gp);
    }
    netgen::CostBenefitParams cb;
    cb.lambda = num(p, "lambda", cb.lambda);
    cb.gamma = num(p, "gamma", cb.gamma);
    return netgen::generate_cost_benefit_network(nodes, cb);
  }
  if (spec.kind == "slime-mould") {
    const int n = int_num(p, "nodes", 20);
    core::SpatialNetwork substrate =
        netgen::generate_random_planar(n, num(p, "keepProbability", 1.0), window, rng);
    netgen::SlimeMouldParams sm;
    sm.iterations = int_num(p, "iterations", sm.iterations);
    sm.flow_amplification = num(p, "flowAmplification", sm.flow_amplification);
    sm.decay = num(p, "decay", sm.decay);
    sm.time_step = num(p, "timeStep", sm.time_step);
    sm.input_flow = num(p, "inputFlow", sm.input_flow);
    sm.keep_threshold = num(p, "keepThreshold", sm.keep_threshold);
    const int terminals = std::min(int_num(p, "terminals", 2), n);
    for (int t = 0; t < terminals; ++t) {
      sm.terminals.push_back(static_cast<core::NodeId>(t));
    }
    return netgen::generate_slime_mould(substrate, sm, rng);
  }
  netgen::CitySystemParams cs;
  cs.n_cities = int_num(p, "nCities", cs.n_cities);
  cs.largest_population = num(p, "largestPopulation", cs.largest_population);
  cs.zipf_exponent = num(p, "zipfExponent", cs.zipf_exponent);
  cs.min_separation = num(p, "minSeparation", cs.min_separation);
  const std::string kind = p.value("networkKind", "tree");
  if (kind == "tree") {
    cs.network_kind = netgen::CitySystemParams::NetworkKind::tree;
  } else if (kind == "gravity") {
    cs.network_kind = netgen::CitySystemParams::NetworkKind::gravity;
  } else if (kind == "complete") {
    cs.network_kind = netgen::CitySystemParams::NetworkKind::complete;
  } else {
    throw ConfigError("unknown network kind: " + kind);
  }
  return netgen::generate_city_system(cs, window, rng);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Job {
  std::size_t point_index = 0;
  long long replication = 0;
  json generator_params;
  json model_params;
};

perturb::DeletionStrategy strategy_param(const json& p) {
  const std::string strategy = p.value("strategy", "random");
  if (strategy == "random") return perturb::DeletionStrategy::random_uniform;
  if (strategy == "targeted") return perturb::DeletionStrategy::targeted_betweenness_descending;
  throw ConfigError("unknown strategy: " + strategy);
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> top_keys = {
      "generator", "perturbations", "indicators", "model",
      "replications", "baseSeed", "parameterGrid", "jobCap"};
  for (const auto& [key, _] : doc.items()) {
    if (!top_keys.contains(key)) throw ConfigError("unknown config field: " + key);
  }

  ExperimentConfig config;
  const auto gen_it = doc.find("generator");
  if (gen_it == doc.end() || !gen_it->is_object() || !gen_it->contains("kind")) {
    throw ConfigError("config needs a generator with a kind");
  }
  config.generator.kind = (*gen_it)["kind"].get<std::string>();
  const auto reg_it = generator_registry().find(config.generator.kind);
  if (reg_it == generator_registry().end()) {
    throw ConfigError("unknown generator kind: " + config.generator.kind);
  }
  const Pipeline pipeline = reg_it->second.first;
  config.generator.params = *gen_it;
  config.generator.params.erase("kind");
  for (const auto& [key, _] : config.generator.params.items()) {
    if (!reg_it->second.second.contains(key)) {
      throw ConfigError("unknown parameter: " + key);
    }
  }

  for (const auto& jp : doc.value("perturbations", json::array())) {
    if (!jp.is_object() || !jp.contains("kind")) {
      throw ConfigError("perturbation needs a kind");
    }
    PerturbationSpec spec;
    spec.kind = jp["kind"].get<std::string>();
    spec.params = jp;
    spec.params.erase("kind");
    const auto& allowed = perturbation_keys(pipeline, spec.kind);
    for (const auto& [key, _] : spec.params.items()) {
      if (!allowed.contains(key)) throw ConfigError("unknown parameter: " + key);
    }
    config.perturbations.push_back(std::move(spec));
  }

  if (doc.contains("model")) {
    if (pipeline != Pipeline::grid) {
      throw ConfigError("model requires a grid generator");
    }
    if (!doc["model"].is_object()) throw ConfigError("model must be an object");
    for (const auto& [key, _] : doc["model"].items()) {
      if (!model_keys().contains(key)) throw ConfigError("unknown parameter: " + key);
    }
    config.model = doc["model"];
  }

  const auto ind_it = doc.find("indicators");
  if (ind_it == doc.end() || !ind_it->is_array() || ind_it->empty()) {
    throw ConfigError("config needs a non-empty indicators list");
  }
  for (const auto& name : *ind_it) {
    config.indicators.push_back(name.get<std::string>());
    validate_indicator(config.indicators.back(), pipeline, config.model.has_value());
  }

  config.replications = doc.value("replications", 1);
  if (config.replications < 1) throw ConfigError("replications must be >= 1");
  config.base_seed = doc.value("baseSeed", 0ULL);
  config.job_cap = doc.value("jobCap", config.job_cap);

  if (doc.contains("parameterGrid")) {
    if (!doc["parameterGrid"].is_object()) {
      throw ConfigError("parameterGrid must be an object");
    }
    for (const auto& [name, values] : doc["parameterGrid"].items()) {
      const bool in_generator = reg_it->second.second.contains(name);
      const bool in_model = config.model.has_value() && model_keys().contains(name);
      if (!in_generator && !in_model) throw ConfigError("unknown parameter: " + name);
      if (!values.is_array() || values.empty()) {
        throw ConfigError("parameter values must be a non-empty array: " + name);
      }
      config.parameter_grid.emplace_back(name,
                                         std::vector<json>(values.begin(), values.end()));
    }
    std::sort(config.parameter_grid.begin(), config.parameter_grid.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  std::uint64_t points = 1;
  for (const auto& [_, values] : config.parameter_grid) points *= values.size();
  if (points * static_cast<std::uint64_t>(config.replications) > config.job_cap) {
    throw ConfigError("job cap exceeded");
  }
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  return parse_config(doc);
}

std::string ResultsTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out += ',';
    out += csv_escape(columns[c]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += csv_escape(row[c]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string json_value_to_cell(const json& v) {
  if (v.is_number()) return core::format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Runs one replication pipeline and fills the indicator cells.
void run_job(const ExperimentConfig& config, Pipeline pipeline, const Job& job,
             const core::Grid* shared_intensity, std::vector<std::string>& cells) {
  const std::uint64_t seed =
      core::mix_seed(config.base_seed, job.point_index,
                     static_cast<std::uint64_t>(job.replication));
  core::RngStream rng(seed);
  GeneratorSpec spec;
  spec.kind = config.generator.kind;
  spec.params = job.generator_params;

  core::IndicatorRecord record;
  if (pipeline == Pipeline::grid) {
    core::Grid grid = make_grid(spec, rng);
    for (const PerturbationSpec& pert : config.perturbations) {
      if (pert.kind == "grid-noise") {
        grid = perturb::perturb_grid_noise(grid, num(pert.params, "sigma", 0.0), rng);
      } else {
        grid = perturb::perturb_grid_poisson(grid, num(pert.params, "intensity", 0.0),
                                             num(pert.params, "delta", 1.0), rng);
      }
    }
    const indicators::MorphologyRecord morph = indicators::grid_morphology(grid);
    record = morph.to_record();
    if (config.model.has_value()) {
      const json& mp = job.model_params;
      models::SchellingState state = models::init_schelling(
          grid, num(mp, "occupiedFraction", 0.8), num(mp, "mixRatio", 0.5),
          num(mp, "tolerance", 0.5), rng);
      const double initial = models::segregation_index(state);
      const auto max_steps = static_cast<long long>(num(mp, "maxSteps", 10000.0));
      const models::SchellingRun run = models::run_schelling(state, max_steps, rng);
      record.set("segregationInitial", initial);
      record.set("segregationFinal", models::segregation_index(run.final_state));
      record.set("stepsRun", static_cast<double>(run.final_state.step));
    }
  } else if (pipeline == Pipeline::network) {
    core::SpatialNetwork net = make_network(spec, rng);
    for (const PerturbationSpec& pert : config.perturbations) {
      if (pert.kind == "delete-nodes") {
        net = perturb::delete_nodes(net, int_num(pert.params, "count", 0),
                                    strategy_param(pert.params), rng);
      } else if (pert.kind == "delete-links") {
        net = perturb::delete_links(net, int_num(pert.params, "count", 0),
                                    strategy_param(pert.params), rng);
      } else {
        net = perturb::jitter_nodes(net, num(pert.params, "sigma", 0.0), rng);
      }
    }
    record = indicators::network_summary(net).to_record();
  } else {
    core::PointSet points;
    if (spec.kind == "homogeneous-poisson") {
      points = pointgen::sample_homogeneous_poisson(num(spec.params, "intensity", 1.0),
                                                    window_param(spec.params), rng);
    } else {
      points = pointgen::sample_inhomogeneous_poisson(*shared_intensity, rng);
    }
    record.set("count", static_cast<double>(points.points.size()));
    for (const std::string& name : config.indicators) {
      if (name.rfind("ripleyK@", 0) == 0) {
        const double r = core::parse_double(name.substr(8));
        if (points.points.size() < 2) {
          throw std::invalid_argument("too few points");
        }
        const auto k = indicators::ripley_k(points, std::vector<double>{r});
        record.set(name, k.front().second);
      }
    }
  }

  for (const std::string& name : config.indicators) {
    cells.push_back(core::format_double(record.get(name)));
  }
  cells.emplace_back();  // empty error column
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& config) {
  const Pipeline pipeline = generator_registry().at(config.generator.kind).first;

  // Shared read-only inputs loaded once up front.
  core::Grid intensity;
  const core::Grid* shared_intensity = nullptr;
  if (config.generator.kind == "inhomogeneous-poisson") {
    const auto it = config.generator.params.find("intensityGrid");
    if (it == config.generator.params.end() || !it->is_string()) {
      throw ConfigError("inhomogeneous-poisson needs an intensityGrid path");
    }
    intensity = core::read_grid_csv(it->get<std::string>());
    shared_intensity = &intensity;
  }

  ResultsTable table;
  for (const auto& [name, _] : config.parameter_grid) table.columns.push_back(name);
  table.columns.push_back("replication");
  table.columns.push_back("seed");
  for (const std::string& name : config.indicators) table.columns.push_back(name);
  table.columns.push_back("error");

  std::size_t n_points = 1;
  for (const auto& [_, values] : config.parameter_grid) n_points *= values.size();

  std::vector<Job> jobs;
  std::vector<std::vector<std::string>> prefixes;  // param cells per point
  jobs.reserve(n_points * static_cast<std::size_t>(config.replications));
  for (std::size_t point = 0; point < n_points; ++point) {
    // Odometer over sorted parameter names, last name fastest.
    std::vector<std::string> prefix;
    json generator_params = config.generator.params;
    json model_params = config.model.value_or(json::object());
    std::size_t remainder = point;
    for (std::size_t p = config.parameter_grid.size(); p-- > 0;) {
      const auto& [name, values] = config.parameter_grid[p];
      const json& value = values[remainder % values.size()];
      remainder /= values.size();
      prefix.push_back(json_value_to_cell(value));
      if (generator_registry().at(config.generator.kind).second.contains(name)) {
        generator_params[name] = value;
      } else {
        model_params[name] = value;
      }
    }
    std::reverse(prefix.begin(), prefix.end());
    prefixes.push_back(std::move(prefix));
    for (long long rep = 0; rep < config.replications; ++rep) {
      Job job;
      job.point_index = point;
      job.replication = rep;
      job.generator_params = generator_params;
      job.model_params = model_params;
      jobs.push_back(std::move(job));
    }
  }

  std::vector<std::vector<std::string>> results(jobs.size());
  const auto run_one = [&](std::size_t j) {
    const Job& job = jobs[j];
    std::vector<std::string> cells;
    try {
      run_job(config, pipeline, job, shared_intensity, cells);
    } catch (const std::exception& e) {
      cells.assign(config.indicators.size(), "");
      cells.emplace_back(e.what());
    }
    results[j] = std::move(cells);
  };

  unsigned int workers = 1;
  if (const char* env = std::getenv("SPATIALGEN_JOBS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 1) workers = static_cast<unsigned int>(parsed);
  }
  workers = std::min<unsigned int>(workers, std::max<unsigned int>(
                                                1, std::thread::hardware_concurrency()));
  if (workers <= 1 || jobs.size() <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_one(j);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t j = w; j < jobs.size(); j += workers) run_one(j);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    std::vector<std::string> row = prefixes[job.point_index];
    row.push_back(std::to_string(job.replication));
    row.push_back(std::to_string(core::mix_seed(config.base_seed, job.point_index,
                                                static_cast<std::uint64_t>(job.replication))));
    for (std::string& cell : results[j]) row.push_back(std::move(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace spatialgen::experiment
