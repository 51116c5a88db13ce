#include "spatialgen/schelling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spatialgen/io.hpp"

namespace spatialgen::models {

using core::Grid;
using core::RngStream;

SchellingState init_schelling(const Grid& grid, double occupied_fraction, double mix_ratio,
                              double tolerance, RngStream& rng) {
  if (!(occupied_fraction > 0.0) || occupied_fraction > 1.0) {
    throw std::invalid_argument("occupied fraction must be in (0,1]");
  }
  if (mix_ratio < 0.0 || mix_ratio > 1.0) {
    throw std::invalid_argument("mix ratio must be in [0,1]");
  }
  if (tolerance < 0.0 || tolerance > 1.0) {
    throw std::invalid_argument("tolerance must be in [0,1]");
  }

  const std::size_t n = grid.size();
  const auto occupied_count =
      static_cast<std::size_t>(std::ceil(occupied_fraction * static_cast<double>(n)));

  // Highest-valued cells win occupancy; stable sort keeps row-major order on
  // ties so generated structure maps directly onto habitable area.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&grid](std::size_t a, std::size_t b) {
    return grid.values[a] > grid.values[b];
  });

  SchellingState state;
  state.width = grid.width;
  state.height = grid.height;
  state.tolerance = tolerance;
  state.cells.assign(n, Cell::vacant);
  std::vector<char> occupied(n, 0);
  for (std::size_t i = 0; i < occupied_count; ++i) occupied[order[i]] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (occupied[i]) {
      state.cells[i] = rng.next_double() < mix_ratio ? Cell::group_a : Cell::group_b;
    }
  }
  return state;
}

bool is_satisfied(const SchellingState& state, int col, int row) {
  const Cell self = state.cells[state.idx(col, row)];
  if (self == Cell::vacant) return true;
  int occupied = 0;
  int same = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int c = col + dc;
      const int r = row + dr;
      if (c < 0 || r < 0 || c >= state.width || r >= state.height) continue;
      const Cell neighbor = state.cells[state.idx(c, r)];
      if (neighbor == Cell::vacant) continue;
      ++occupied;
      if (neighbor == self) ++same;
    }
  }
  if (occupied == 0) return true;
  return static_cast<double>(same) / static_cast<double>(occupied) >= state.tolerance;
}

namespace {

std::vector<std::size_t> unsatisfied_cells(const SchellingState& state) {
  std::vector<std::size_t> out;
  for (int row = 0; row < state.height; ++row) {
    for (int col = 0; col < state.width; ++col) {
      const std::size_t i = state.idx(col, row);
      if (state.cells[i] != Cell::vacant && !is_satisfied(state, col, row)) {
        out.push_back(i);
      }
    }
  }
  return out;
}

}  // namespace

SchellingState step_schelling(const SchellingState& state, RngStream& rng) {
  SchellingState next = state;
  next.step = state.step + 1;

  const std::vector<std::size_t> unhappy = unsatisfied_cells(state);
  if (unhappy.empty()) return next;

  std::vector<std::size_t> vacant;
  for (std::size_t i = 0; i < state.cells.size(); ++i) {
    if (state.cells[i] == Cell::vacant) vacant.push_back(i);
  }
  if (vacant.empty()) throw std::runtime_error("no vacancy");

  const std::size_t mover = unhappy[rng.next_index(unhappy.size())];
  const std::size_t target = vacant[rng.next_index(vacant.size())];
  next.cells[target] = next.cells[mover];
  next.cells[mover] = Cell::vacant;
  return next;
}

double segregation_index(const SchellingState& state) {
  double sum = 0.0;
  long long counted = 0;
  bool any_agent = false;
  for (int row = 0; row < state.height; ++row) {
    for (int col = 0; col < state.width; ++col) {
      const Cell self = state.cells[state.idx(col, row)];
      if (self == Cell::vacant) continue;
      any_agent = true;
      int occupied = 0;
      int same = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int c = col + dc;
          const int r = row + dr;
          if (c < 0 || r < 0 || c >= state.width || r >= state.height) continue;
          const Cell neighbor = state.cells[state.idx(c, r)];
          if (neighbor == Cell::vacant) continue;
          ++occupied;
          if (neighbor == self) ++same;
        }
      }
      if (occupied > 0) {
        sum += static_cast<double>(same) / static_cast<double>(occupied);
        ++counted;
      }
    }
  }
  if (!any_agent) throw std::invalid_argument("no occupied cell");
  if (counted == 0) return 1.0;
  return sum / static_cast<double>(counted);
}

SchellingRun run_schelling(const SchellingState& initial, long long max_steps,
                           RngStream& rng) {
  SchellingRun run;
  run.final_state = initial;
  run.trajectory.emplace_back(initial.step, segregation_index(initial));
  for (long long s = 0; s < max_steps; ++s) {
    if (unsatisfied_cells(run.final_state).empty()) break;
    run.final_state = step_schelling(run.final_state, rng);
    if (run.final_state.step % 100 == 0) {
      run.trajectory.emplace_back(run.final_state.step, segregation_index(run.final_state));
    }
  }
  if (run.trajectory.back().first != run.final_state.step) {
    run.trajectory.emplace_back(run.final_state.step, segregation_index(run.final_state));
  }
  return run;
}

std::string trajectory_to_csv(const SchellingRun& run) {
  std::string out = "step,segregationIndex\n";
  for (const auto& [step, index] : run.trajectory) {
    out += std::to_string(step);
    out += ',';
    out += core::format_double(index);
    out += '\n';
  }
  return out;
}

}  // namespace spatialgen::models
