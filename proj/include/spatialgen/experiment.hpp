#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace spatialgen::experiment {

// Configuration problems are reported before any run starts and map to the
// CLI usage exit code.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One generator with its parameters; the kind decides whether the pipeline
// produces grids, networks, or point sets.
struct GeneratorSpec {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
};

struct PerturbationSpec {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
  GeneratorSpec generator;
  std::vector<PerturbationSpec> perturbations;
  std::vector<std::string> indicators;
  std::optional<nlohmann::json> model;  // Schelling block, grid pipelines only
  long long replications = 1;
  std::uint64_t base_seed = 0;
  // Full factorial sweep: name -> values, names sorted for determinism.
  std::vector<std::pair<std::string, std::vector<nlohmann::json>>> parameter_grid;
  std::uint64_t job_cap = 1000000;
};

// Parses and validates a config document; throws ConfigError on unknown
// generator kinds, parameters, indicator names, or an exceeded job cap.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);

struct ResultsTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

// Runs the full factorial sweep times replications. Row order is point-major,
// replication-minor; the per-row seed is mix(baseSeed, pointIndex, r). A
// failing replication keeps its row, with the message in the error column.
// SPATIALGEN_JOBS > 1 runs replications concurrently; output is unaffected.
ResultsTable run_experiment(const ExperimentConfig& config);

}  // namespace spatialgen::experiment
