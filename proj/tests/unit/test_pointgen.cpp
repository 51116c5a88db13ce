#include <cmath>

#include "doctest.h"
#include "spatialgen/pointgen.hpp"

using namespace spatialgen;
using core::Grid;
using core::RngStream;
using core::Window;

TEST_CASE("zero intensity produces no points") {
  RngStream rng(1);
  const auto ps = pointgen::sample_homogeneous_poisson(0.0, {0, 0, 1, 1}, rng);
  CHECK(ps.points.empty());
}

TEST_CASE("all sampled points lie inside the window") {
  RngStream rng(9);
  const Window window{-2.0, 1.0, 3.0, 4.0};
  const auto ps = pointgen::sample_homogeneous_poisson(30.0, window, rng);
  for (const auto& p : ps.points) CHECK(window.contains(p));
}

TEST_CASE("mean count over 1000 seeds is within 3 standard errors") {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RngStream rng(seed);
    total += static_cast<double>(
        pointgen::sample_homogeneous_poisson(50.0, {0, 0, 1, 1}, rng).points.size());
  }
  const double mean = total / 1000.0;
  CHECK(std::fabs(mean - 50.0) < 3.0 * std::sqrt(50.0 / 1000.0));
}

TEST_CASE("counts in disjoint half-windows are uncorrelated") {
  const int n = 1000;
  double sum_a = 0.0, sum_b = 0.0, sum_ab = 0.0;
  for (std::uint64_t seed = 0; seed < n; ++seed) {
    RngStream rng(seed + 5000);
    const auto ps = pointgen::sample_homogeneous_poisson(50.0, {0, 0, 1, 1}, rng);
    double a = 0.0, b = 0.0;
    for (const auto& p : ps.points) {
      (p.x < 0.5 ? a : b) += 1.0;
    }
    sum_a += a;
    sum_b += b;
    sum_ab += a * b;
  }
  const double mean_a = sum_a / n;
  const double mean_b = sum_b / n;
  const double cov = sum_ab / n - mean_a * mean_b;
  // Var(count) = 25 per half, so se(cov) is about sqrt(25*25/n).
  CHECK(std::fabs(cov) < 3.0 * std::sqrt(25.0 * 25.0 / n));
}

TEST_CASE("thinning with a constant grid matches the homogeneous mean count") {
  Grid grid(4, 4);
  for (double& v : grid.values) v = 3.0;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RngStream rng(seed);
    total += static_cast<double>(pointgen::sample_inhomogeneous_poisson(grid, rng).points.size());
  }
  const double mean = total / 500.0;
  const double expected = 3.0 * 16.0;  // intensity times area
  CHECK(std::fabs(mean - expected) < 3.0 * std::sqrt(expected / 500.0));
}

TEST_CASE("single-cell intensity confines all points to that cell") {
  Grid grid(5, 5);
  grid.at(2, 1) = 7.0;  // col 2, raster row 1 -> y band 3
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed);
    const auto ps = pointgen::sample_inhomogeneous_poisson(grid, rng);
    for (const auto& p : ps.points) {
      CHECK(p.x >= 2.0);
      CHECK(p.x < 3.0);
      CHECK(p.y >= 3.0);
      CHECK(p.y < 4.0);
    }
  }
}

TEST_CASE("an all-zero intensity grid yields an empty point set") {
  Grid grid(3, 3);
  RngStream rng(2);
  CHECK(pointgen::sample_inhomogeneous_poisson(grid, rng).points.empty());
}

TEST_CASE("thinning acceptance rate tracks the intensity ratio") {
  Grid grid(2, 1);
  grid.at(0, 0) = 10.0;
  grid.at(1, 0) = 5.0;
  double kept_low = 0.0;
  double total_runs = 400.0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    RngStream rng(seed);
    const auto ps = pointgen::sample_inhomogeneous_poisson(grid, rng);
    for (const auto& p : ps.points) {
      if (p.x >= 1.0) kept_low += 1.0;
    }
  }
  // Expected points in the half-intensity cell: 5 per unit area per run.
  const double mean_low = kept_low / total_runs;
  CHECK(std::fabs(mean_low - 5.0) < 3.0 * std::sqrt(5.0 / total_runs));
}

TEST_CASE("point sampling is seed-deterministic") {
  RngStream a(42), b(42);
  const auto pa = pointgen::sample_homogeneous_poisson(80.0, {0, 0, 2, 2}, a);
  const auto pb = pointgen::sample_homogeneous_poisson(80.0, {0, 0, 2, 2}, b);
  REQUIRE(pa.points.size() == pb.points.size());
  for (std::size_t i = 0; i < pa.points.size(); ++i) {
    CHECK(pa.points[i].x == pb.points[i].x);
    CHECK(pa.points[i].y == pb.points[i].y);
  }
}
