#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::models {

enum class Cell : std::uint8_t { vacant, group_a, group_b };

// Schelling segregation state on a non-toroidal grid with Moore-8
// neighborhoods. Group counts are conserved by the dynamics; moves only
// relocate agents.
struct SchellingState {
  int width = 0;
  int height = 0;
  std::vector<Cell> cells;
  double tolerance = 0.5;  // required fraction of same-group neighbors
  long long step = 0;

  std::size_t idx(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(col);
  }
};

// Occupies the ceil(occupied_fraction * n) highest-valued cells of the grid
// (ties by row-major index); each occupied cell becomes group A with
// probability mix_ratio, otherwise group B.
SchellingState init_schelling(const core::Grid& grid, double occupied_fraction,
                              double mix_ratio, double tolerance, core::RngStream& rng);

// An agent is satisfied when its same-group share among occupied Moore-8
// neighbors reaches the tolerance; agents without occupied neighbors are
// satisfied. Exposed for tests.
bool is_satisfied(const SchellingState& state, int col, int row);

// One asynchronous update: a uniformly chosen unsatisfied agent relocates to
// a uniformly chosen vacant cell. With no unsatisfied agent the state is
// returned unchanged except for the step counter.
SchellingState step_schelling(const SchellingState& state, core::RngStream& rng);

// Mean same-group neighbor share over agents with at least one occupied
// neighbor; 1 when every agent is isolated.
double segregation_index(const SchellingState& state);

struct SchellingRun {
  SchellingState final_state;
  std::vector<std::pair<long long, double>> trajectory;  // every 100 steps + final
};

SchellingRun run_schelling(const SchellingState& initial, long long max_steps,
                           core::RngStream& rng);

// "step,segregationIndex" CSV of a run's trajectory.
std::string trajectory_to_csv(const SchellingRun& run);

}  // namespace spatialgen::models
