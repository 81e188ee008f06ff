// Structural adaptation of the growable tree. A well-funded leaf splits into
// two children that specialise on half of its regions each; a decision node
// whose leaf children jointly fall below the trim threshold collapses back
// into a single leaf. Growth happens only at leaves, trimming only one level
// per step, and both conserve assets.
#pragma once

#include <set>
#include <vector>

#include "msad/graph.hpp"

namespace msad {

// Splits a service leaf into two new service children when it holds at least
// grow_threshold resident assets and supports at least two regions. The first
// child takes the first half of the region interval (rounded up), assets are
// divided equally, and the new edges start in flow equilibrium.
inline bool try_grow(SystemGraph& g, NodeId leaf, const ModelParams& params) {
  {
    const NodeState& st = g.state(leaf);
    if (st.kind != NodeKind::Service) return false;
    if (st.resident_assets < params.grow_threshold || st.regions.size() < 2) return false;
  }

  NodeState& st = g.state(leaf);
  std::vector<int> regions = st.regions;
  std::size_t first_half = (regions.size() + 1) / 2;
  std::vector<int> left(regions.begin(), regions.begin() + static_cast<std::ptrdiff_t>(first_half));
  std::vector<int> right(regions.begin() + static_cast<std::ptrdiff_t>(first_half), regions.end());
  double half_assets = st.resident_assets / 2.0;

  st.kind = NodeKind::Decision;
  st.resident_assets = 0.0;
  st.regions.clear();

  for (std::vector<int>* child_regions : {&left, &right}) {
    NodeId child = g.add_service_node(std::move(*child_regions), half_assets);
    g.add_edge(leaf, child);
    NodeState& cs = g.state(child);
    cs.up_assets_out = half_assets;
    cs.up_profit_out = 0.0;
    EdgeFlows& e = g.edge(leaf, child);
    e.up_assets = half_assets;
    e.up_profit = 0.0;
    e.down_assets = half_assets;
  }
  return true;
}

// Collapses a decision node whose children are all single-parent service
// leaves holding less than trim_threshold assets in total. The node becomes a
// leaf over the union of the children's regions, keeps every asset involved,
// and leaves its upward-facing flow values untouched.
inline bool try_trim(SystemGraph& g, NodeId node, const ModelParams& params) {
  {
    const NodeState& st = g.state(node);
    if (st.kind != NodeKind::Decision) return false;
  }
  const auto& out = g.out_edges(node);
  if (out.empty()) return false;

  double child_total = 0.0;
  std::vector<int> merged_regions;
  std::vector<NodeId> children;
  for (const auto& [child, flows] : out) {
    const NodeState& cs = g.state(child);
    if (cs.kind != NodeKind::Service) return false;
    if (g.parents_of(child).size() != 1) return false;
    child_total += cs.total_assets();
    merged_regions.insert(merged_regions.end(), cs.regions.begin(), cs.regions.end());
    children.push_back(child);
  }
  if (child_total >= params.trim_threshold) return false;

  for (NodeId child : children) g.remove_leaf(child);
  NodeState& st = g.state(node);
  st.kind = NodeKind::Service;
  std::sort(merged_regions.begin(), merged_regions.end());
  st.regions = std::move(merged_regions);
  st.resident_assets += st.nonsettled_assets + child_total;
  st.nonsettled_assets = 0.0;
  return true;
}

namespace detail {

inline bool trim_eligible(const SystemGraph& g, NodeId node, const ModelParams& params) {
  if (g.state(node).kind != NodeKind::Decision) return false;
  const auto& out = g.out_edges(node);
  if (out.empty()) return false;
  double child_total = 0.0;
  for (const auto& [child, flows] : out) {
    const NodeState& cs = g.state(child);
    if (cs.kind != NodeKind::Service) return false;
    if (g.parents_of(child).size() != 1) return false;
    child_total += cs.total_assets();
  }
  return child_total < params.trim_threshold;
}

}  // namespace detail

// One structural sweep: all trims eligible at the start of the pass, then all
// grows, each node changing at most once. Eligibility is decided against a
// snapshot, so a trim cannot cascade upward within the pass and nodes created
// or reshaped within it wait for the next step.
inline int morphology_pass(SystemGraph& g, const ModelParams& params) {
  if (!params.growable) return 0;
  int changes = 0;
  std::set<NodeId> changed;

  std::vector<NodeId> trim_candidates;
  g.for_each_node([&](NodeId id, const NodeState&) {
    if (detail::trim_eligible(g, id, params)) trim_candidates.push_back(id);
  });
  for (NodeId id : trim_candidates) {
    if (try_trim(g, id, params)) {
      ++changes;
      changed.insert(id);
    }
  }

  std::vector<NodeId> grow_candidates;
  g.for_each_node([&](NodeId id, const NodeState& st) {
    if (st.kind == NodeKind::Service && !changed.count(id)) grow_candidates.push_back(id);
  });
  for (NodeId id : grow_candidates) {
    if (try_grow(g, id, params)) ++changes;
  }
  return changes;
}

}  // namespace msad
