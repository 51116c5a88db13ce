#include "spatialgen/gridgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spatialgen::gridgen {

using core::Grid;
using core::RngStream;

namespace {

void check_size(int size) {
  if (size < 1) throw std::invalid_argument("grid size must be positive");
}

// Draws a cell index from cumulative weights via binary search.
std::size_t draw_cell(const std::vector<double>& cumulative, RngStream& rng) {
  const double u = rng.next_double() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(i, cumulative.size() - 1);
}

}  // namespace

void diffusion_sweep(Grid& grid, double beta) {
  if (beta <= 0.0) return;
  const int w = grid.width;
  const int h = grid.height;
  std::vector<double> next(grid.values.size(), 0.0);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const double mass = grid.at(col, row);
      const double sent = beta * mass;
      int degree = 0;
      if (col > 0) ++degree;
      if (col + 1 < w) ++degree;
      if (row > 0) ++degree;
      if (row + 1 < h) ++degree;
      next[grid.idx(col, row)] += mass - sent;
      if (degree == 0) {
        next[grid.idx(col, row)] += sent;  // 1x1 grid keeps its mass
        continue;
      }
      const double share = sent / degree;
      if (col > 0) next[grid.idx(col - 1, row)] += share;
      if (col + 1 < w) next[grid.idx(col + 1, row)] += share;
      if (row > 0) next[grid.idx(col, row - 1)] += share;
      if (row + 1 < h) next[grid.idx(col, row + 1)] += share;
    }
  }
  grid.values = std::move(next);
}

Grid generate_reaction_diffusion(const ReactionDiffusionParams& p, RngStream& rng) {
  check_size(p.size);
  if (!(p.total_population > 0.0)) throw std::invalid_argument("total population must be > 0");
  if (!(p.growth_rate > 0.0)) throw std::invalid_argument("growth rate must be > 0");
  if (p.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (p.beta < 0.0 || p.beta > 1.0) throw std::invalid_argument("beta must be in [0,1]");
  if (p.diffusion_steps < 0) throw std::invalid_argument("diffusion steps must be >= 0");

  Grid grid(p.size, p.size);
  const std::size_t n = grid.size();
  std::vector<double> cumulative(n);
  double total = 0.0;
  while (total < p.total_population) {
    // Attachment probabilities are frozen at the state left by the previous
    // macro step; increments within a step do not feed back.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += p.alpha == 0.0 ? 1.0 : std::pow(grid.values[i], p.alpha);
      cumulative[i] = acc;
    }
    if (!(acc > 0.0)) {
      for (std::size_t i = 0; i < n; ++i) cumulative[i] = static_cast<double>(i + 1);
    }

    double remaining = p.growth_rate;
    while (remaining > 0.0) {
      const double increment = std::min(1.0, remaining);
      grid.values[draw_cell(cumulative, rng)] += increment;
      remaining -= increment;
    }
    total += p.growth_rate;

    for (int s = 0; s < p.diffusion_steps; ++s) diffusion_sweep(grid, p.beta);
  }
  return grid;
}

Grid generate_kernel_mixture(const KernelMixtureParams& p, RngStream& rng) {
  check_size(p.size);
  if (p.n_centers < 1) throw std::invalid_argument("need at least one center");
  if (!(p.max_value > 0.0)) throw std::invalid_argument("max value must be > 0");
  if (!(p.radius > 0.0)) throw std::invalid_argument("radius must be > 0");

  std::vector<std::pair<int, int>> centers(static_cast<std::size_t>(p.n_centers));
  for (auto& [cx, cy] : centers) {
    cx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.size)));
    cy = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.size)));
  }

  Grid grid(p.size, p.size);
  for (int row = 0; row < p.size; ++row) {
    for (int col = 0; col < p.size; ++col) {
      double value = 0.0;
      for (const auto& [cx, cy] : centers) {
        const double u = std::hypot(static_cast<double>(col - cx),
                                    static_cast<double>(row - cy)) / p.radius;
        value += p.max_value * (p.kernel == KernelMixtureParams::Kernel::exponential
                                    ? std::exp(-u)
                                    : std::exp(-0.5 * u * u));
      }
      grid.at(col, row) = value;
    }
  }
  return grid;
}

Grid largest_cluster(const Grid& binary) {
  const int w = binary.width;
  const int h = binary.height;
  std::vector<int> label(binary.size(), -1);
  std::vector<std::size_t> cluster_size;
  std::vector<std::size_t> stack;

  for (std::size_t start = 0; start < binary.size(); ++start) {
    if (binary.values[start] <= 0.0 || label[start] >= 0) continue;
    const int cluster = static_cast<int>(cluster_size.size());
    std::size_t count = 0;
    stack.push_back(start);
    label[start] = cluster;
    while (!stack.empty()) {
      const std::size_t cell = stack.back();
      stack.pop_back();
      ++count;
      const int col = static_cast<int>(cell % static_cast<std::size_t>(w));
      const int row = static_cast<int>(cell / static_cast<std::size_t>(w));
      const auto visit = [&](int c, int r) {
        if (c < 0 || r < 0 || c >= w || r >= h) return;
        const std::size_t i = binary.idx(c, r);
        if (binary.values[i] > 0.0 && label[i] < 0) {
          label[i] = cluster;
          stack.push_back(i);
        }
      };
      visit(col - 1, row);
      visit(col + 1, row);
      visit(col, row - 1);
      visit(col, row + 1);
    }
    cluster_size.push_back(count);
  }

  // Clusters are discovered in row-major order of their first cell, so a
  // strict size comparison keeps the smallest-index cluster on ties.
  int best = -1;
  std::size_t best_size = 0;
  for (std::size_t c = 0; c < cluster_size.size(); ++c) {
    if (cluster_size[c] > best_size) {
      best_size = cluster_size[c];
      best = static_cast<int>(c);
    }
  }

  Grid out(w, h, binary.cell_size);
  if (best >= 0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.values[i] = label[i] == best ? 1.0 : 0.0;
    }
  }
  return out;
}

Grid generate_percolation(const PercolationParams& p, RngStream& rng) {
  check_size(p.size);
  if (p.occupation_probability < 0.0 || p.occupation_probability > 1.0) {
    throw std::invalid_argument("occupation probability must be in [0,1]");
  }
  Grid grid(p.size, p.size);
  for (double& v : grid.values) {
    v = rng.next_double() < p.occupation_probability ? 1.0 : 0.0;
  }
  if (p.keep_largest_cluster_only) return largest_cluster(grid);
  return grid;
}

Grid generate_blocks(const BlocksParams& p, RngStream& rng) {
  check_size(p.size);
  if (p.n_blocks < 0) throw std::invalid_argument("block count must be >= 0");
  if (p.min_block_side < 1 || p.min_block_side > p.max_block_side ||
      p.max_block_side > p.size) {
    throw std::invalid_argument("invalid block side range");
  }

  struct Rect {
    int col, row, w, h;
  };
  const auto overlaps = [](const Rect& a, const Rect& b) {
    return a.col < b.col + b.w && b.col < a.col + a.w && a.row < b.row + b.h &&
           b.row < a.row + a.h;
  };

  Grid grid(p.size, p.size);
  std::vector<Rect> placed;
  const std::uint64_t side_span =
      static_cast<std::uint64_t>(p.max_block_side - p.min_block_side + 1);
  for (int b = 0; b < p.n_blocks; ++b) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Rect r;
      r.w = p.min_block_side + static_cast<int>(rng.next_below(side_span));
      r.h = p.min_block_side + static_cast<int>(rng.next_below(side_span));
      r.col = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.size - r.w + 1)));
      r.row = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.size - r.h + 1)));
      if (!p.allow_overlap) {
        bool clash = false;
        for (const Rect& other : placed) {
          if (overlaps(r, other)) {
            clash = true;
            break;
          }
        }
        if (clash) continue;  // rejection sample; give up after 1000 tries
      }
      placed.push_back(r);
      for (int row = r.row; row < r.row + r.h; ++row) {
        for (int col = r.col; col < r.col + r.w; ++col) {
          grid.at(col, row) = 1.0;
        }
      }
      break;
    }
  }
  return grid;
}

}  // namespace spatialgen::gridgen
