#include <stdexcept>

#include "doctest.h"
#include "spatialgen/io.hpp"
#include "spatialgen/netgen.hpp"
#include "spatialgen/pointset.hpp"
#include "spatialgen/rng.hpp"

using namespace spatialgen;

TEST_CASE("two-node network round-trips through JSON") {
  core::SpatialNetwork net;
  net.nodes = {{0, 0.0, 0.0, 1.0}, {1, 3.0, 4.0, 2.5}};
  net.edges = {{0, 1, 5.0, 2.0, 5.0}};
  const core::SpatialNetwork back = core::network_from_json(core::network_to_json(net));
  REQUIRE(back.nodes.size() == 2);
  REQUIRE(back.edges.size() == 1);
  CHECK(back.directed == false);
  CHECK(back.nodes[1].weight == 2.5);
  CHECK(back.edges[0].length == 5.0);
  CHECK(back.edges[0].capacity == 2.0);
}

TEST_CASE("missing optional fields take defaults") {
  const auto net = core::network_from_json(R"({
    "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 3, "y": 4}],
    "edges": [{"from": 0, "to": 1}]
  })");
  CHECK(net.nodes[0].weight == 1.0);
  CHECK(net.edges[0].length == 5.0);          // straight-line distance
  CHECK(net.edges[0].free_flow_time == 5.0);  // defaults to length
  CHECK(net.edges[0].capacity == 1.0);
}

TEST_CASE("dangling edge is rejected") {
  CHECK_THROWS_WITH_AS(core::network_from_json(R"({
    "nodes": [{"id": 0, "x": 0, "y": 0}],
    "edges": [{"from": 0, "to": 7}]
  })"),
                       "dangling edge", std::invalid_argument);
}

TEST_CASE("duplicate node ids are rejected") {
  CHECK_THROWS_WITH_AS(core::network_from_json(R"({
    "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 0, "x": 1, "y": 1}],
    "edges": []
  })"),
                       "duplicate node id", std::invalid_argument);
}

TEST_CASE("generated 200-node network round-trips field-for-field") {
  core::RngStream rng(7);
  const core::SpatialNetwork net =
      netgen::generate_random_planar(200, 0.4, {0.0, 0.0, 10.0, 10.0}, rng);
  const core::SpatialNetwork back = core::network_from_json(core::network_to_json(net));
  REQUIRE(back.nodes.size() == net.nodes.size());
  REQUIRE(back.edges.size() == net.edges.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    CHECK(back.nodes[i].id == net.nodes[i].id);
    CHECK(back.nodes[i].x == net.nodes[i].x);
    CHECK(back.nodes[i].y == net.nodes[i].y);
    CHECK(back.nodes[i].weight == net.nodes[i].weight);
  }
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    CHECK(back.edges[e].from == net.edges[e].from);
    CHECK(back.edges[e].to == net.edges[e].to);
    CHECK(back.edges[e].length == net.edges[e].length);
    CHECK(back.edges[e].capacity == net.edges[e].capacity);
    CHECK(back.edges[e].free_flow_time == net.edges[e].free_flow_time);
  }
}

TEST_CASE("point set CSV round-trips with its window") {
  core::PointSet ps;
  ps.window = {0.0, 0.0, 2.0, 1.0};
  ps.points = {{0.25, 0.5}, {1.75, 0.125}};
  const std::string csv = core::pointset_to_csv(ps);
  CHECK(csv == "# 0,0,2,1\nx,y\n0.25,0.5\n1.75,0.125\n");
  const core::PointSet back = core::pointset_from_csv(csv);
  CHECK(back.window.xmax == 2.0);
  REQUIRE(back.points.size() == 2);
  CHECK(back.points[1].x == 1.75);
}

TEST_CASE("point outside the window is rejected") {
  CHECK_THROWS_AS(core::pointset_from_csv("# 0,0,1,1\nx,y\n2,0.5\n"), std::invalid_argument);
}
