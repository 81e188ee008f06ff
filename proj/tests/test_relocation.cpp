#include <catch2/catch.hpp>

#include <random>

#include "msad/relocation.hpp"
#include "msad/topologies.hpp"

using namespace msad;

TEST_CASE("pressure is the unsettled subtree estimate minus the grant") {
  SystemGraph g;
  NodeId root = g.add_decision_node();
  NodeId child = g.add_decision_node();
  NodeId leaf = g.add_service_node({1});
  g.add_edge(root, child);
  g.add_edge(child, leaf);

  auto set = [&](double up, double nonset, double down) {
    g.edge(root, child).up_assets = up;
    g.state(child).nonsettled_assets = nonset;
    g.edge(root, child).down_assets = down;
  };
  set(50.0, 5.0, 40.0);
  CHECK(pressure(g, child, root).delta_p == Approx(5.0));
  set(40.0, 0.0, 40.0);
  CHECK(pressure(g, child, root).delta_p == 0.0);
  set(30.0, 0.0, 50.0);
  CHECK(pressure(g, child, root).delta_p == Approx(-20.0));

  CHECK_THROWS_AS(pressure(g, root, leaf), std::invalid_argument);
}

TEST_CASE("a service child releases alpha times the pressure") {
  SystemGraph g;
  NodeId root = g.add_decision_node();
  NodeId leaf = g.add_service_node({1}, 50.0);
  g.add_edge(root, leaf);
  g.edge(root, leaf).up_assets = 50.0;
  g.edge(root, leaf).down_assets = 40.0;  // pressure 10

  ModelParams p;
  p.alpha = 0.2;
  double moved = relocate(g, p);
  CHECK(moved == Approx(2.0));
  CHECK(g.state(leaf).resident_assets == Approx(48.0));
  CHECK(g.state(leaf).nonsettled_assets == 0.0);
  CHECK(g.state(root).nonsettled_assets == Approx(2.0));
}

TEST_CASE("redistribution serves the worst need first and clamps to the pool") {
  SystemGraph g;
  NodeId root = g.add_decision_node();
  NodeId a = g.add_service_node({1});
  NodeId b = g.add_service_node({2});
  g.add_edge(root, a);
  g.add_edge(root, b);
  g.state(root).nonsettled_assets = 10.0;
  g.edge(root, a).down_assets = 5.0;  // pressure -5
  g.edge(root, b).down_assets = 8.0;  // pressure -8, served first

  double moved = relocate(g, ModelParams{});
  CHECK(moved == Approx(10.0));
  CHECK(g.state(b).resident_assets == Approx(8.0));
  CHECK(g.state(a).resident_assets == Approx(2.0));  // short by 3 until a later step
  CHECK(g.state(root).nonsettled_assets == 0.0);
}

TEST_CASE("equal needs break ties by node id") {
  SystemGraph g;
  NodeId root = g.add_decision_node();
  NodeId a = g.add_service_node({1});
  NodeId b = g.add_service_node({2});
  g.add_edge(root, a);
  g.add_edge(root, b);
  g.state(root).nonsettled_assets = 5.0;
  g.edge(root, a).down_assets = 5.0;
  g.edge(root, b).down_assets = 5.0;

  relocate(g, ModelParams{});
  CHECK(g.state(a).resident_assets == Approx(5.0));
  CHECK(g.state(b).resident_assets == 0.0);
}

TEST_CASE("zero pressure everywhere is a fixpoint") {
  SystemGraph g = build_topology(TopologyKind::FixedTree, 8, 100.0);
  double moved = relocate(g, ModelParams{});
  CHECK(moved == 0.0);
  g.for_each_node([&](NodeId, const NodeState& st) { CHECK(st.nonsettled_assets == 0.0); });
  CHECK(total_assets(g) == Approx(100.0));
}

TEST_CASE("a decision child under positive pressure hands over its whole pool") {
  SystemGraph g;
  NodeId root = g.add_decision_node();
  NodeId mid = g.add_decision_node();
  NodeId leaf = g.add_service_node({1});
  g.add_edge(root, mid);
  g.add_edge(mid, leaf);
  g.state(mid).nonsettled_assets = 4.0;

  SECTION("pressure above the pool") {
    g.edge(root, mid).up_assets = 11.0;  // pressure (11 - 4) - 0 = 7
    relocate(g, ModelParams{});
    CHECK(g.state(mid).nonsettled_assets == 0.0);
    CHECK(g.state(root).nonsettled_assets == Approx(4.0));
  }
  SECTION("even a small positive pressure flushes the pool") {
    g.edge(root, mid).up_assets = 5.0;  // pressure (5 - 4) - 0 = 1
    relocate(g, ModelParams{});
    CHECK(g.state(mid).nonsettled_assets == 0.0);
    CHECK(g.state(root).nonsettled_assets == Approx(4.0));
  }
  SECTION("no pressure keeps the pool in place") {
    g.edge(root, mid).up_assets = 4.0;  // pressure (4 - 4) - 0 = 0
    relocate(g, ModelParams{});
    CHECK(g.state(mid).nonsettled_assets == Approx(4.0));
    CHECK(g.state(root).nonsettled_assets == 0.0);
  }
}

TEST_CASE("a stale overestimate pulls deep assets to the root in one sweep") {
  // the mid node first collects from its leaf, then the root collects the
  // freshly gathered pool in the same pass
  SystemGraph g;
  NodeId root = g.add_decision_node();
  NodeId mid = g.add_decision_node();
  NodeId leaf = g.add_service_node({1}, 50.0);
  g.add_edge(root, mid);
  g.add_edge(mid, leaf);
  g.edge(mid, leaf).up_assets = 50.0;
  g.edge(mid, leaf).down_assets = 0.0;
  g.edge(root, mid).up_assets = 120.0;
  g.edge(root, mid).down_assets = 0.0;

  relocate(g, ModelParams{});
  CHECK(g.state(leaf).resident_assets == 0.0);
  CHECK(g.state(mid).nonsettled_assets == 0.0);
  CHECK(g.state(root).nonsettled_assets == Approx(50.0));
}

TEST_CASE("parents draw from a shared resident budget in id order") {
  SystemGraph g;
  NodeId r1 = g.add_decision_node();
  NodeId r2 = g.add_decision_node();
  NodeId leaf = g.add_service_node({1}, 10.0);
  g.add_edge(r1, leaf);
  g.add_edge(r2, leaf);
  g.edge(r1, leaf).up_assets = 100.0;
  g.edge(r2, leaf).up_assets = 100.0;

  SECTION("alpha = 1 drains the budget at the first parent") {
    relocate(g, ModelParams{});
    CHECK(g.state(r1).nonsettled_assets == Approx(10.0));
    CHECK(g.state(r2).nonsettled_assets == 0.0);
    CHECK(g.state(leaf).resident_assets == 0.0);
  }
  SECTION("alpha caps each parent's draw separately") {
    ModelParams p;
    p.alpha = 0.02;  // 2 per parent against pressure 100
    relocate(g, p);
    CHECK(g.state(r1).nonsettled_assets == Approx(2.0));
    CHECK(g.state(r2).nonsettled_assets == Approx(2.0));
    CHECK(g.state(leaf).resident_assets == Approx(6.0));
  }
}

TEST_CASE("relocation conserves assets and never drives balances negative") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int iter = 0; iter < 400; ++iter) {
    TopologyKind kind = all_topology_kinds()[rng() % all_topology_kinds().size()];
    SystemGraph g = build_topology(kind, 8, 100.0);
    // adversarial state: scramble balances and flow values
    g.for_each_node([&](NodeId id, const NodeState&) {
      NodeState& st = g.state(id);
      if (st.kind == NodeKind::Service)
        st.resident_assets = unit(rng) * 50.0;
      else
        st.nonsettled_assets = unit(rng) * 30.0;
    });
    for (NodeId id : g.node_ids()) {
      for (auto& [child, e] : g.out_edges(id)) {
        e.up_assets = unit(rng) * 120.0;
        e.down_assets = unit(rng) * 120.0;
      }
    }
    ModelParams p;
    p.alpha = 0.05 + 0.95 * unit(rng);

    double before = total_assets(g);
    double moved = relocate(g, p);
    CHECK(moved >= 0.0);
    CHECK(total_assets(g) == Approx(before).margin(1e-9));
    g.for_each_node([&](NodeId, const NodeState& st) {
      CHECK(st.resident_assets >= 0.0);
      CHECK(st.nonsettled_assets >= 0.0);
    });
  }
}
