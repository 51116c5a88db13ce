#pragma once

#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::gridgen {

// Mesoscale population morphogenesis: repeated preferential growth plus
// local diffusion until the target mass is reached.
struct ReactionDiffusionParams {
  int size = 50;
  double total_population = 10000.0;  // stop once the grid holds this mass
  double growth_rate = 500.0;         // mass added per macro step
  double alpha = 1.0;                 // preferential-attachment exponent
  double beta = 0.1;                  // fraction diffused per sweep, in [0,1]
  int diffusion_steps = 1;            // sweeps per macro step
};

struct KernelMixtureParams {
  int size = 50;
  int n_centers = 1;
  double max_value = 1.0;  // kernel amplitude
  double radius = 10.0;    // decay scale in cell units
  enum class Kernel { exponential, gaussian } kernel = Kernel::exponential;
};

struct PercolationParams {
  int size = 50;
  double occupation_probability = 0.5;
  bool keep_largest_cluster_only = false;
};

struct BlocksParams {
  int size = 50;
  int n_blocks = 10;
  int min_block_side = 1;
  int max_block_side = 5;
  bool allow_overlap = true;
};

core::Grid generate_reaction_diffusion(const ReactionDiffusionParams& p, core::RngStream& rng);

// One mass-conserving diffusion sweep: each cell sends `beta` of its mass,
// split equally among its in-grid von Neumann neighbors. Exposed for tests.
void diffusion_sweep(core::Grid& grid, double beta);

core::Grid generate_kernel_mixture(const KernelMixtureParams& p, core::RngStream& rng);

core::Grid generate_percolation(const PercolationParams& p, core::RngStream& rng);

// Labels 4-connected clusters of positive cells; keeps the largest (ties go
// to the cluster containing the smallest row-major index). Exposed because
// microscale morphology reuses it.
core::Grid largest_cluster(const core::Grid& binary);

core::Grid generate_blocks(const BlocksParams& p, core::RngStream& rng);

}  // namespace spatialgen::gridgen
