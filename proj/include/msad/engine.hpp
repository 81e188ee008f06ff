// Discrete-time simulation driver. One step = bottom-up flow sweep, top-down
// flow sweep, relocation sweep, then (for growable topologies) a morphology
// pass; metrics are sampled from the post-step state.
#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "msad/environment.hpp"
#include "msad/flows.hpp"
#include "msad/graph.hpp"
#include "msad/morphology.hpp"
#include "msad/relocation.hpp"
#include "msad/topologies.hpp"

namespace msad {

struct MetricsRow {
  int step = 0;
  double profit = 0.0;         // system-wide profit produced this step
  double relocated_pct = 0.0;  // share of total assets moved this step, in percent
  std::vector<double> region_assets;  // resident assets attributed per region
  int node_count = 0;
  int leaf_count = 0;
};

struct RunResult {
  std::vector<MetricsRow> rows;
  SystemGraph final_graph;
};

using StepObserver = std::function<void(int step, const SystemGraph&)>;

inline MetricsRow collect_metrics(const SystemGraph& g, const Environment& env, int t,
                                  double moved) {
  MetricsRow row;
  row.step = t;
  row.profit = system_profit(g, env, t);
  row.region_assets.assign(static_cast<std::size_t>(env.num_regions()), 0.0);
  int nodes = 0;
  int leaves = 0;
  g.for_each_node([&](NodeId, const NodeState& st) {
    ++nodes;
    if (st.kind == NodeKind::Service) {
      ++leaves;
      double share = st.resident_assets / static_cast<double>(st.regions.size());
      for (int r : st.regions) row.region_assets[static_cast<std::size_t>(r - 1)] += share;
    }
  });
  row.node_count = nodes;
  row.leaf_count = leaves;
  double total = total_assets(g);
  row.relocated_pct = total > 0.0 ? 100.0 * moved / total : 0.0;
  return row;
}

inline MetricsRow step(SystemGraph& g, const ModelParams& params, const Environment& env, int t) {
  update_bottom_up_flows(g, params, env, t);
  update_top_down_flows(g, params);
  double moved = relocate(g, params);
  if (params.growable) morphology_pass(g, params);
  return collect_metrics(g, env, t, moved);
}

// Builds the topology and simulates total_steps steps. Fully deterministic:
// two calls with the same arguments produce identical trajectories. The
// observer, when set, sees the graph after each completed step.
inline RunResult run(TopologyKind kind, const ModelParams& params, const Environment& env,
                     int total_steps, double total_assets_amount = 100.0,
                     const StepObserver& observer = {}) {
  if (total_steps < 1) throw std::invalid_argument("total_steps must be >= 1");
  SystemGraph g = build_topology(kind, env.num_regions(), total_assets_amount);
  RunResult result;
  result.rows.reserve(static_cast<std::size_t>(total_steps));
  for (int t = 0; t < total_steps; ++t) {
    result.rows.push_back(step(g, params, env, t));
    if (observer) observer(t, g);
  }
  result.final_graph = std::move(g);
  return result;
}

// Arithmetic mean of the profit column over rows [from, to).
inline double mean_profit(const RunResult& result, int from, int to) {
  if (from < 0 || from >= to || to > static_cast<int>(result.rows.size()))
    throw std::invalid_argument("mean_profit range is empty or out of bounds");
  double sum = 0.0;
  for (int t = from; t < to; ++t) sum += result.rows[static_cast<std::size_t>(t)].profit;
  return sum / static_cast<double>(to - from);
}

}  // namespace msad
