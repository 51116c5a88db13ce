#include <cmath>
#include <set>

#include "doctest.h"
#include "spatialgen/netgen.hpp"
#include "spatialgen/perturb.hpp"
#include "test_helpers.hpp"

using namespace spatialgen;
using core::Grid;
using core::RngStream;
using perturb::DeletionStrategy;
using testutil::make_net;

TEST_CASE("zero-sigma noise is the identity") {
  Grid g(6, 4);
  for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = static_cast<double>(i);
  RngStream rng(1);
  CHECK(perturb::perturb_grid_noise(g, 0.0, rng).values == g.values);
}

TEST_CASE("noise outputs stay non-negative and keep the shape") {
  Grid g(10, 10);
  for (double& v : g.values) v = 0.5;
  RngStream rng(3);
  const Grid out = perturb::perturb_grid_noise(g, 2.0, rng);
  CHECK(out.width == 10);
  CHECK(out.height == 10);
  for (const double v : out.values) CHECK(v >= 0.0);
}

TEST_CASE("mean absolute noise change matches the half-normal mean") {
  Grid g(100, 100);
  for (double& v : g.values) v = 100.0;  // clipping is negligible up here
  RngStream rng(7);
  const Grid out = perturb::perturb_grid_noise(g, 1.0, rng);
  double mean_abs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    mean_abs += std::fabs(out.values[i] - 100.0);
  }
  mean_abs /= static_cast<double>(g.size());
  const double half_normal = std::sqrt(2.0 / 3.14159265358979323846);
  CHECK(std::fabs(mean_abs - half_normal) < 0.05 * half_normal);
}

TEST_CASE("zero-intensity Poisson perturbation is the identity") {
  Grid g(5, 5);
  for (double& v : g.values) v = 2.0;
  RngStream rng(1);
  CHECK(perturb::perturb_grid_poisson(g, 0.0, 1.0, rng).values == g.values);
}

TEST_CASE("Poisson perturbation adds exactly delta per point") {
  Grid g(8, 8);
  RngStream rng(13);
  const Grid out = perturb::perturb_grid_poisson(g, 2.0, 0.25, rng);
  const double added = out.total() - g.total();
  const double points = added / 0.25;
  CHECK(points == doctest::Approx(std::round(points)).epsilon(1e-12));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(out.values[i] >= g.values[i]);
}

TEST_CASE("expected Poisson mass increase is delta * intensity * area") {
  Grid g(4, 4);
  double added = 0.0;
  const int runs = 400;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    RngStream rng(seed);
    added += perturb::perturb_grid_poisson(g, 3.0, 0.5, rng).total();
  }
  const double mean = added / runs;
  const double expected = 0.5 * 3.0 * 16.0;
  const double se = 0.5 * std::sqrt(3.0 * 16.0 / runs);
  CHECK(std::fabs(mean - expected) < 3.0 * se);
}

TEST_CASE("deleting zero nodes or links is the identity") {
  const auto net = make_net({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1.0}, {1, 2, 1.5}});
  RngStream rng(1);
  CHECK(perturb::delete_nodes(net, 0, DeletionStrategy::random_uniform, rng).nodes.size() == 3);
  CHECK(perturb::delete_links(net, 0, DeletionStrategy::random_uniform, rng).edges.size() == 2);
}

TEST_CASE("deleting one node from a triangle leaves two nodes and one edge") {
  const auto net =
      make_net({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1.0}, {1, 2, 1.5}, {0, 2, 1.5}});
  RngStream rng(5);
  const auto out = perturb::delete_nodes(net, 1, DeletionStrategy::random_uniform, rng);
  CHECK(out.nodes.size() == 2);
  CHECK(out.edges.size() == 1);
}

TEST_CASE("targeted deletion removes the betweenness maximizer first") {
  // Path A-B-C: B carries the only through path.
  const auto net = make_net({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 1.0}, {1, 2, 1.0}});
  RngStream rng(1);
  const auto out =
      perturb::delete_nodes(net, 1, DeletionStrategy::targeted_betweenness_descending, rng);
  REQUIRE(out.nodes.size() == 2);
  for (const auto& n : out.nodes) CHECK(n.id != 1);
  CHECK(out.edges.empty());
}

TEST_CASE("deletions remove exactly k and never create edges") {
  RngStream gen(3);
  const auto net = netgen::generate_random_planar(30, 0.7, {0, 0, 1, 1}, gen);
  for (const auto strategy :
       {DeletionStrategy::random_uniform, DeletionStrategy::targeted_betweenness_descending}) {
    RngStream rng(11);
    const auto fewer_nodes = perturb::delete_nodes(net, 7, strategy, rng);
    CHECK(fewer_nodes.nodes.size() == net.nodes.size() - 7);
    CHECK(fewer_nodes.edges.size() <= net.edges.size());

    RngStream rng2(12);
    const auto fewer_links = perturb::delete_links(net, 9, strategy, rng2);
    CHECK(fewer_links.nodes.size() == net.nodes.size());
    CHECK(fewer_links.edges.size() == net.edges.size() - 9);
  }
}

TEST_CASE("random deletion draws without replacement") {
  const auto net = make_net({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 1}},
                            {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.5}});
  RngStream rng(21);
  const auto out = perturb::delete_nodes(net, 5, DeletionStrategy::random_uniform, rng);
  CHECK(out.nodes.empty());
  CHECK(out.edges.empty());
}

TEST_CASE("oversized deletion counts are an error") {
  const auto net = make_net({{0, 0}, {1, 0}}, {{0, 1, 1.0}});
  RngStream rng(1);
  CHECK_THROWS_AS(perturb::delete_nodes(net, 3, DeletionStrategy::random_uniform, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturb::delete_links(net, 2, DeletionStrategy::random_uniform, rng),
                  std::invalid_argument);
}

TEST_CASE("zero-sigma jitter is the identity, lengths included") {
  // A curved edge keeps its surplus length only when nothing moves.
  auto net = make_net({{0, 0}, {1, 0}}, {{0, 1, 2.5}});
  RngStream rng(1);
  const auto out = perturb::jitter_nodes(net, 0.0, rng);
  CHECK(out.nodes[0].x == 0.0);
  CHECK(out.edges[0].length == 2.5);
}

TEST_CASE("jitter keeps topology and recomputes lengths exactly") {
  RngStream gen(9);
  const auto net = netgen::generate_random_planar(20, 0.5, {0, 0, 1, 1}, gen);
  RngStream rng(2);
  const auto out = perturb::jitter_nodes(net, 0.1, rng);
  REQUIRE(out.edges.size() == net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    CHECK(out.edges[e].from == net.edges[e].from);
    CHECK(out.edges[e].to == net.edges[e].to);
  }
  // Independent recomputation of every length from the new coordinates.
  for (const auto& edge : out.edges) {
    const core::Node* a = nullptr;
    const core::Node* b = nullptr;
    for (const auto& n : out.nodes) {
      if (n.id == edge.from) a = &n;
      if (n.id == edge.to) b = &n;
    }
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    CHECK(std::fabs(edge.length - std::hypot(a->x - b->x, a->y - b->y)) <= 1e-12);
  }
}
