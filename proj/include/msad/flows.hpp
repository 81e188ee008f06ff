// The three information flows. Bottom-up, every node reports a smoothed
// estimate of the assets and the profitability inside its subtree; top-down,
// every decision node grants each child a share of the assets it may hold.
// The gamma weights turn each update into a geometric approach toward its
// target, which is how communication delay is modelled.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "msad/environment.hpp"
#include "msad/graph.hpp"

namespace msad {

// One sweep from the deepest nodes toward the roots. Parents read the values
// their children wrote earlier in the same sweep.
inline void update_bottom_up_flows(SystemGraph& g, const ModelParams& params,
                                   const Environment& env, int t) {
  for (NodeId n : bottom_up_order(g)) {
    NodeState& st = g.state(n);
    double asset_target;
    double profit_target;
    if (st.kind == NodeKind::Service) {
      asset_target = st.total_assets();
      profit_target = service_profit(st, env, t);
    } else {
      double child_assets = 0.0;
      double child_profit = 0.0;
      for (const auto& [child, flows] : g.out_edges(n)) {
        child_assets += flows.up_assets;
        child_profit += flows.up_profit;
      }
      asset_target = st.total_assets() + child_assets;
      profit_target = child_profit;
    }
    st.up_assets_out += params.gamma_up_assets * (asset_target - st.up_assets_out);
    st.up_profit_out += params.gamma_up_profit * (profit_target - st.up_profit_out);
    for (NodeId parent : g.parents_of(n)) {
      EdgeFlows& e = g.edge(parent, n);
      e.up_assets = st.up_assets_out;
      e.up_profit = st.up_profit_out;
    }
  }
}

// Assets a node is eligible to manage this step: the combined grant from its
// parents, capped by what its subtree actually contains. Roots grant
// themselves their whole subtree.
inline double eligible_assets(const SystemGraph& g, NodeId n) {
  const NodeState& st = g.state(n);
  double subtree_estimate = st.total_assets();
  for (const auto& [child, flows] : g.out_edges(n)) subtree_estimate += flows.up_assets;
  const std::vector<NodeId>& parents = g.parents_of(n);
  if (parents.empty()) return subtree_estimate;
  double granted = 0.0;
  for (NodeId p : parents) granted += g.edge(p, n).down_assets;
  return std::min(granted, subtree_estimate);
}

// Divides a decision node's eligible assets (minus its management cost) among
// its children, proportionally to reported profitability raised to beta.
// beta = 0 and the all-children-report-zero case both mean an equal split.
inline std::vector<std::pair<NodeId, double>> split_eligible(const SystemGraph& g, NodeId n,
                                                             const ModelParams& params) {
  const auto& out = g.out_edges(n);
  if (out.empty()) return {};
  double pool = std::max(0.0, eligible_assets(g, n) - params.cost);

  std::vector<double> weights;
  weights.reserve(out.size());
  double weight_sum = 0.0;
  if (params.beta != 0.0) {
    for (const auto& [child, flows] : out) {
      double w = std::pow(flows.up_profit, params.beta);
      weights.push_back(w);
      weight_sum += w;
    }
  }

  std::vector<std::pair<NodeId, double>> shares;
  shares.reserve(out.size());
  const double equal = pool / static_cast<double>(out.size());
  std::size_t i = 0;
  for (const auto& [child, flows] : out) {
    double amount = (params.beta == 0.0 || weight_sum <= 0.0) ? equal : pool * (weights[i] / weight_sum);
    shares.emplace_back(child, amount);
    ++i;
  }
  return shares;
}

// One sweep from the roots toward the deepest nodes, moving each edge grant
// toward the freshly computed share.
inline void update_top_down_flows(SystemGraph& g, const ModelParams& params) {
  for (NodeId n : depth_order(g)) {
    if (g.out_edges(n).empty()) continue;
    for (const auto& [child, amount] : split_eligible(g, n, params)) {
      EdgeFlows& e = g.edge(n, child);
      e.down_assets += params.gamma_down * (amount - e.down_assets);
    }
  }
}

}  // namespace msad
