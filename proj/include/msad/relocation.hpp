// Pressure-driven asset movement. Every parent<->child edge carries a
// pressure difference: subtree content not already in transit, minus the
// granted amount. Positive pressure pushes assets up to the parent's
// non-settled pool, negative pressure pulls them back down.
#pragma once

#include <algorithm>
#include <vector>

#include "msad/graph.hpp"

namespace msad {

struct PressureReading {
  NodeId child;
  NodeId parent;
  double delta_p = 0.0;  // positive: child releases upward; negative: child needs assets
};

inline PressureReading pressure(const SystemGraph& g, NodeId child, NodeId parent) {
  const EdgeFlows& e = g.edge(parent, child);
  const NodeState& cs = g.state(child);
  return PressureReading{child, parent, (e.up_assets - cs.nonsettled_assets) - e.down_assets};
}

// One relocation sweep, deepest decision nodes first. Each decision node
// collects from its over-provisioned children, then serves its needy children
// from its non-settled pool, worst need first. Every transfer is clamped to
// what the source actually holds, so balances never go negative. Returns the
// total asset mass moved.
inline double relocate(SystemGraph& g, const ModelParams& params) {
  double moved = 0.0;
  for (NodeId parent : bottom_up_order(g)) {
    const auto& out = g.out_edges(parent);
    if (out.empty()) continue;

    std::vector<PressureReading> readings;
    readings.reserve(out.size());
    for (const auto& [child, flows] : out) readings.push_back(pressure(g, child, parent));

    NodeState& pool = g.state(parent);

    // Collection. A service child converts a fraction alpha of the pressure
    // from resident to non-settled and hands it over immediately; a decision
    // child under positive pressure hands over its whole unused pool. The
    // full hand-over matters: pressure discounts assets that are already
    // non-settled, so a capped transfer would let leftover pools sit at
    // interior nodes for good instead of draining toward where they are
    // needed.
    for (const PressureReading& r : readings) {
      if (r.delta_p <= 0.0) continue;
      NodeState& cs = g.state(r.child);
      double amount;
      if (cs.kind == NodeKind::Service) {
        amount = std::min(params.alpha * r.delta_p, cs.resident_assets);
        if (amount <= 0.0) continue;
        cs.resident_assets -= amount;
      } else {
        amount = cs.nonsettled_assets;
        if (amount <= 0.0) continue;
        cs.nonsettled_assets = 0.0;
      }
      pool.nonsettled_assets += amount;
      moved += amount;
    }

    // Redistribution, most negative pressure first. Arrivals settle at
    // service nodes and stay relocatable at decision nodes.
    std::vector<const PressureReading*> needy;
    for (const PressureReading& r : readings)
      if (r.delta_p < 0.0) needy.push_back(&r);
    std::sort(needy.begin(), needy.end(), [](const PressureReading* a, const PressureReading* b) {
      return a->delta_p != b->delta_p ? a->delta_p < b->delta_p : a->child < b->child;
    });
    for (const PressureReading* r : needy) {
      double amount = std::min(-r->delta_p, pool.nonsettled_assets);
      if (amount <= 0.0) continue;
      pool.nonsettled_assets -= amount;
      NodeState& cs = g.state(r->child);
      if (cs.kind == NodeKind::Service)
        cs.resident_assets += amount;
      else
        cs.nonsettled_assets += amount;
      moved += amount;
    }
  }
  return moved;
}

}  // namespace msad
