#include <string>

#include "doctest.h"
#include "spatialgen/experiment.hpp"

using namespace spatialgen;
using experiment::ConfigError;

namespace {

const char* kKernelConfig = R"({
  "generator": {"kind": "kernel-mixture", "size": 16, "nCenters": 2, "maxValue": 5.0,
                "radius": 3.0},
  "indicators": ["mass", "moran", "entropy"],
  "replications": 1,
  "baseSeed": 7
})";

}  // namespace

TEST_CASE("a single replication produces one row and reruns byte-identically") {
  const auto config = experiment::parse_config_text(kKernelConfig);
  const auto table1 = experiment::run_experiment(config);
  const auto table2 = experiment::run_experiment(config);
  REQUIRE(table1.rows.size() == 1);
  CHECK(table1.columns ==
        std::vector<std::string>{"replication", "seed", "mass", "moran", "entropy", "error"});
  CHECK(table1.to_csv() == table2.to_csv());
  CHECK(table1.rows[0].back().empty());  // no error
}

TEST_CASE("factorial sweep emits point-major replication-minor rows") {
  const auto config = experiment::parse_config_text(R"({
    "generator": {"kind": "reaction-diffusion", "size": 8, "totalPopulation": 200,
                  "growthRate": 50, "beta": 0.1, "diffusionSteps": 1},
    "indicators": ["mass"],
    "replications": 3,
    "baseSeed": 1,
    "parameterGrid": {"alpha": [0.5, 4.0]}
  })");
  const auto table = experiment::run_experiment(config);
  REQUIRE(table.rows.size() == 6);
  CHECK(table.columns[0] == "alpha");
  for (int i = 0; i < 3; ++i) {
    CHECK(table.rows[static_cast<std::size_t>(i)][0] == "0.5");
    CHECK(table.rows[static_cast<std::size_t>(i)][1] == std::to_string(i));
    CHECK(table.rows[static_cast<std::size_t>(i + 3)][0] == "4");
  }
}

TEST_CASE("sweeping a model parameter works against the grid pipeline") {
  const auto config = experiment::parse_config_text(R"({
    "generator": {"kind": "kernel-mixture", "size": 10, "nCenters": 1},
    "model": {"occupiedFraction": 0.8, "mixRatio": 0.5, "maxSteps": 50},
    "indicators": ["segregationInitial", "segregationFinal", "stepsRun"],
    "replications": 2,
    "baseSeed": 3,
    "parameterGrid": {"tolerance": [0.2, 0.6]}
  })");
  const auto table = experiment::run_experiment(config);
  REQUIRE(table.rows.size() == 4);
  for (const auto& row : table.rows) CHECK(row.back().empty());
}

TEST_CASE("higher alpha gives higher mean Moran through the full experiment pipeline") {
  const auto config = experiment::parse_config_text(R"({
    "generator": {"kind": "reaction-diffusion", "size": 20, "totalPopulation": 20000,
                  "growthRate": 400, "beta": 0.1, "diffusionSteps": 2},
    "indicators": ["moran"],
    "replications": 20,
    "baseSeed": 11,
    "parameterGrid": {"alpha": [0.5, 4.0]}
  })");
  const auto table = experiment::run_experiment(config);
  REQUIRE(table.rows.size() == 40);
  double low = 0.0, high = 0.0;
  for (std::size_t r = 0; r < 20; ++r) {
    low += std::stod(table.rows[r][3]);
    high += std::stod(table.rows[r + 20][3]);
  }
  CHECK(high / 20.0 > low / 20.0);
}

TEST_CASE("unknown indicators and parameters are config errors") {
  CHECK_THROWS_AS(experiment::parse_config_text(R"({
    "generator": {"kind": "kernel-mixture"},
    "indicators": ["definitely-not-an-indicator"]
  })"),
                  ConfigError);
  CHECK_THROWS_AS(experiment::parse_config_text(R"({
    "generator": {"kind": "kernel-mixture"},
    "indicators": ["mass"],
    "parameterGrid": {"notAParameter": [1, 2]}
  })"),
                  ConfigError);
  CHECK_THROWS_AS(experiment::parse_config_text(R"({
    "generator": {"kind": "no-such-generator"},
    "indicators": ["mass"]
  })"),
                  ConfigError);
  CHECK_THROWS_AS(experiment::parse_config_text(R"({
    "generator": {"kind": "kernel-mixture", "sigma": 3},
    "indicators": ["mass"]
  })"),
                  ConfigError);
  CHECK_THROWS_AS(experiment::parse_config_text(R"({
    "generator": {"kind": "tree"},
    "model": {"tolerance": 0.5},
    "indicators": ["nNodes"]
  })"),
                  ConfigError);
}

TEST_CASE("the job cap rejects oversized sweeps before running") {
  CHECK_THROWS_AS(experiment::parse_config_text(R"({
    "generator": {"kind": "kernel-mixture"},
    "indicators": ["mass"],
    "replications": 2000000
  })"),
                  ConfigError);
}

TEST_CASE("runtime failures land in the error column without aborting the sweep") {
  // City systems that cannot satisfy the separation fail per replication.
  const auto config = experiment::parse_config_text(R"({
    "generator": {"kind": "city-system", "nCities": 40, "minSeparation": 5.0,
                  "window": [0, 0, 1, 1]},
    "indicators": ["nNodes"],
    "replications": 2,
    "baseSeed": 5
  })");
  const auto table = experiment::run_experiment(config);
  REQUIRE(table.rows.size() == 2);
  for (const auto& row : table.rows) {
    CHECK(row.back() == "cannot place cities");
    CHECK(row[2].empty());  // indicator cell left blank
  }
}

TEST_CASE("network and point pipelines produce their indicator columns") {
  const auto net_table = experiment::run_experiment(experiment::parse_config_text(R"({
    "generator": {"kind": "random-planar", "nodes": 15, "keepProbability": 0.5},
    "perturbations": [{"kind": "delete-links", "count": 2, "strategy": "targeted"}],
    "indicators": ["nNodes", "nEdges", "cyclomatic"],
    "replications": 2,
    "baseSeed": 9
  })"));
  REQUIRE(net_table.rows.size() == 2);
  CHECK(net_table.rows[0][2] == "15");

  const auto point_table = experiment::run_experiment(experiment::parse_config_text(R"({
    "generator": {"kind": "homogeneous-poisson", "intensity": 200,
                  "window": [0, 0, 1, 1]},
    "indicators": ["count", "ripleyK@0.05"],
    "replications": 2,
    "baseSeed": 13
  })"));
  REQUIRE(point_table.rows.size() == 2);
  for (const auto& row : point_table.rows) CHECK(row.back().empty());
}
