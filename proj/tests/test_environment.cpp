#include <catch2/catch.hpp>

#include <random>

#include "msad/engine.hpp"
#include "msad/environment.hpp"

using namespace msad;

TEST_CASE("switching schedule selects the entry in force at t") {
  Environment env = make_left_right_left(8, 400, 0.3, 0.1);
  CHECK(env.quality_at(0, 1) == 0.3);
  CHECK(env.quality_at(0, 2) == 0.1);
  CHECK(env.quality_at(0, 8) == 0.1);
  CHECK(env.quality_at(399, 8) == 0.1);
  CHECK(env.quality_at(399, 1) == 0.3);
  CHECK(env.quality_at(400, 8) == 0.3);
  CHECK(env.quality_at(400, 1) == 0.1);
  CHECK(env.quality_at(799, 8) == 0.3);
  CHECK(env.quality_at(800, 1) == 0.3);
  CHECK(env.quality_at(5000, 1) == 0.3);
}

TEST_CASE("region index bounds are enforced") {
  Environment env = make_static_left(8, 0.3, 0.1);
  CHECK_THROWS_AS(env.quality_at(0, 0), std::out_of_range);
  CHECK_THROWS_AS(env.quality_at(0, 9), std::out_of_range);
}

TEST_CASE("schedule construction is validated") {
  CHECK_THROWS_AS(Environment(4, {}), std::invalid_argument);
  CHECK_THROWS_AS(Environment(4, {{1, {0.1, 0.1, 0.1, 0.1}}}), std::invalid_argument);
  CHECK_THROWS_AS(Environment(4, {{0, {0.1, 0.1}}}), std::invalid_argument);
  CHECK_THROWS_AS(Environment(4, {{0, {0.1, 0.1, 0.1, 0.1}}, {0, {0.1, 0.1, 0.1, 0.1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Environment(4, {{0, {0.1, -0.1, 0.1, 0.1}}}), std::invalid_argument);
}

TEST_CASE("service profit is assets times mean region quality") {
  Environment env = make_static_left(8, 0.3, 0.1);
  NodeState node;
  node.kind = NodeKind::Service;
  node.regions = {1, 2};
  node.resident_assets = 10.0;
  CHECK(service_profit(node, env, 0) == Approx(2.0));

  node.resident_assets = 0.0;
  CHECK(service_profit(node, env, 0) == 0.0);

  node.kind = NodeKind::Decision;
  node.regions.clear();
  CHECK_THROWS_AS(service_profit(node, env, 0), std::invalid_argument);
}

TEST_CASE("profit is linear in resident assets") {
  Environment env = make_left_right_left(8, 400, 0.3, 0.1);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amount(0.0, 80.0);
  std::uniform_real_distribution<double> factor(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    NodeState node;
    node.kind = NodeKind::Service;
    node.regions = {1 + static_cast<int>(rng() % 8)};
    node.resident_assets = amount(rng);
    double k = factor(rng);
    int t = static_cast<int>(rng() % 1200);
    double base = service_profit(node, env, t);
    node.resident_assets *= k;
    CHECK(service_profit(node, env, t) == Approx(k * base).margin(1e-9));
  }
}

TEST_CASE("uniform allocation earns total assets times mean quality") {
  Environment env = make_left_right_left(8, 400, 0.3, 0.1);
  // 100 assets spread evenly over the regions: 12.5 per step in this
  // environment regardless of the topology partitioning them.
  for (TopologyKind kind : all_topology_kinds()) {
    SystemGraph g = build_topology(kind, 8, 100.0);
    CHECK(system_profit(g, env, 0) == Approx(12.5));
    CHECK(system_profit(g, env, 400) == Approx(12.5));
  }
}
