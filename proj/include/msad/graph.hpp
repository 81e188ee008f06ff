// Core data model: the control-topology DAG, per-node asset state, per-edge
// flow values and the model parameter set. Everything else in the library
// operates on these types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace msad {

// Opaque node handle. The numeric value also defines the canonical iteration
// order used by every sweep, which is what makes runs reproducible.
struct NodeId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::string to_string(NodeId id) { return "n" + std::to_string(id.value); }

enum class NodeKind { Decision, Service };

// Flow values carried by one parent->child edge. The two bottom-up values are
// copies of the child's current outputs (a node reports the same estimate to
// every parent); the top-down value is genuinely per-edge.
struct EdgeFlows {
  double up_assets = 0.0;    // child's estimate of assets in its subtree
  double up_profit = 0.0;    // child's estimate of its subtree profitability
  double down_assets = 0.0;  // assets this parent considers the child eligible for
};

struct NodeState {
  NodeKind kind = NodeKind::Decision;
  double resident_assets = 0.0;
  double nonsettled_assets = 0.0;
  std::vector<int> regions;  // sorted, 1-based; non-empty iff kind == Service

  // Latest bottom-up outputs. Mirrored onto every parent edge; kept on the
  // node as well so roots (which have no parent edges) retain them.
  double up_assets_out = 0.0;
  double up_profit_out = 0.0;

  double total_assets() const { return resident_assets + nonsettled_assets; }
};

struct ModelParams {
  double beta = 0.0;             // competition factor, >= 0
  double alpha = 1.0;            // service release factor, in (0, 1]
  double gamma_up_assets = 1.0;  // smoothing weights, in [0, 1]
  double gamma_up_profit = 1.0;
  double gamma_down = 1.0;
  double cost = 0.0;             // per-decision-node management cost, >= 0
  double grow_threshold = 25.0;
  double trim_threshold = 20.0;  // must stay below grow_threshold
  bool growable = false;         // whether morphology passes run
};

// DAG of decision/service nodes. Structure is mutated only through the
// methods below, which keep the parent lists and the root list consistent.
// Node state and edge flows are freely mutable through state()/edge().
class SystemGraph {
 public:
  NodeId add_node(NodeKind kind, std::vector<int> regions = {}, double resident = 0.0) {
    NodeId id{next_id_++};
    Entry e;
    e.state.kind = kind;
    e.state.resident_assets = resident;
    std::sort(regions.begin(), regions.end());
    e.state.regions = std::move(regions);
    nodes_.emplace(id, std::move(e));
    insert_sorted(roots_, id);
    return id;
  }

  NodeId add_decision_node() { return add_node(NodeKind::Decision); }
  NodeId add_service_node(std::vector<int> regions, double resident = 0.0) {
    return add_node(NodeKind::Service, std::move(regions), resident);
  }

  void add_edge(NodeId parent, NodeId child) {
    Entry& pe = entry(parent);
    Entry& ce = entry(child);
    if (parent == child) throw std::invalid_argument("self edge on " + to_string(parent));
    if (!pe.out.emplace(child, EdgeFlows{}).second)
      throw std::invalid_argument("duplicate edge " + to_string(parent) + "->" + to_string(child));
    insert_sorted(ce.parents, parent);
    erase_sorted(roots_, child);
  }

  // Removes a node along with its incoming edges. The node must be childless.
  void remove_leaf(NodeId id) {
    Entry& e = entry(id);
    if (!e.out.empty()) throw std::invalid_argument(to_string(id) + " still has children");
    for (NodeId p : e.parents) entry(p).out.erase(id);
    erase_sorted(roots_, id);
    nodes_.erase(id);
  }

  bool contains(NodeId id) const { return nodes_.count(id) != 0; }
  std::size_t node_count() const { return nodes_.size(); }

  NodeState& state(NodeId id) { return entry(id).state; }
  const NodeState& state(NodeId id) const { return entry(id).state; }

  bool has_edge(NodeId parent, NodeId child) const {
    auto it = nodes_.find(parent);
    return it != nodes_.end() && it->second.out.count(child) != 0;
  }

  EdgeFlows& edge(NodeId parent, NodeId child) {
    auto it = entry(parent).out.find(child);
    if (it == entry(parent).out.end())
      throw std::invalid_argument("no edge " + to_string(parent) + "->" + to_string(child));
    return it->second;
  }
  const EdgeFlows& edge(NodeId parent, NodeId child) const {
    return const_cast<SystemGraph*>(this)->edge(parent, child);
  }

  // Outgoing edges keyed by child id (so iteration is in NodeId order).
  const std::map<NodeId, EdgeFlows>& out_edges(NodeId id) const { return entry(id).out; }
  std::map<NodeId, EdgeFlows>& out_edges(NodeId id) { return entry(id).out; }

  const std::vector<NodeId>& parents_of(NodeId id) const { return entry(id).parents; }
  const std::vector<NodeId>& roots() const { return roots_; }

  std::vector<NodeId> node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, e] : nodes_) ids.push_back(id);
    return ids;
  }

  template <typename Fn>
  void for_each_node(Fn&& fn) const {
    for (const auto& [id, e] : nodes_) fn(id, e.state);
  }

  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (const auto& [pid, e] : nodes_)
      for (const auto& [cid, flows] : e.out) fn(pid, cid, flows);
  }

 private:
  struct Entry {
    NodeState state;
    std::map<NodeId, EdgeFlows> out;
    std::vector<NodeId> parents;  // sorted
  };

  Entry& entry(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::invalid_argument("unknown node " + to_string(id));
    return it->second;
  }
  const Entry& entry(NodeId id) const { return const_cast<SystemGraph*>(this)->entry(id); }

  static void insert_sorted(std::vector<NodeId>& v, NodeId id) {
    v.insert(std::lower_bound(v.begin(), v.end(), id), id);
  }
  static void erase_sorted(std::vector<NodeId>& v, NodeId id) {
    auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it != v.end() && *it == id) v.erase(it);
  }

  std::map<NodeId, Entry> nodes_;
  std::vector<NodeId> roots_;
  std::uint32_t next_id_ = 0;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

// Topological node order via Kahn's algorithm. Returns node ids in an order
// where parents precede children; leaves unreachable-from-roots nodes (i.e.
// cycle members) out of the result.
inline std::vector<NodeId> topological_order(const SystemGraph& g) {
  std::map<NodeId, std::size_t> pending;
  std::vector<NodeId> ready;
  g.for_each_node([&](NodeId id, const NodeState&) {
    std::size_t deg = g.parents_of(id).size();
    if (deg == 0)
      ready.push_back(id);
    else
      pending[id] = deg;
  });
  std::vector<NodeId> order;
  order.reserve(g.node_count());
  while (!ready.empty()) {
    // smallest id first keeps the order canonical
    auto min_it = std::min_element(ready.begin(), ready.end());
    NodeId n = *min_it;
    ready.erase(min_it);
    order.push_back(n);
    for (const auto& [child, flows] : g.out_edges(n)) {
      auto it = pending.find(child);
      if (it != pending.end() && --it->second == 0) {
        ready.push_back(child);
        pending.erase(it);
      }
    }
  }
  return order;
}

}  // namespace detail

// Checks every structural invariant and reports all violations instead of
// stopping at the first.
inline ValidationResult validate_graph(const SystemGraph& g) {
  ValidationResult result;
  auto report = [&](std::string msg) { result.violations.push_back(std::move(msg)); };

  if (detail::topological_order(g).size() != g.node_count()) report("cycle");

  std::vector<NodeId> parentless;
  g.for_each_node([&](NodeId id, const NodeState& st) {
    bool has_children = !g.out_edges(id).empty();
    if (g.parents_of(id).empty()) parentless.push_back(id);
    if (st.kind == NodeKind::Decision) {
      if (!has_children) report("childless decision node " + to_string(id));
      if (!st.regions.empty()) report("decision node " + to_string(id) + " has regions");
    } else {
      if (st.regions.empty()) report("region-less service node " + to_string(id));
      if (has_children) report("service node " + to_string(id) + " has children");
    }
    if (st.resident_assets < 0.0 || st.nonsettled_assets < 0.0)
      report("negative asset balance at " + to_string(id));
  });
  if (parentless != g.roots()) report("stale roots list");

  g.for_each_edge([&](NodeId p, NodeId c, const EdgeFlows& f) {
    if (!(std::isfinite(f.up_assets) && std::isfinite(f.up_profit) && std::isfinite(f.down_assets)) ||
        f.up_assets < 0.0 || f.up_profit < 0.0 || f.down_assets < 0.0)
      report("bad flow values on edge " + to_string(p) + "->" + to_string(c));
  });
  return result;
}

// Longest-path depth from any root; roots are at depth 0. Throws on a cycle.
inline std::map<NodeId, int> compute_depths(const SystemGraph& g) {
  auto order = detail::topological_order(g);
  if (order.size() != g.node_count()) throw std::invalid_argument("cycle");
  std::map<NodeId, int> depth;
  for (NodeId n : order) depth[n] = 0;
  for (NodeId n : order)
    for (const auto& [child, flows] : g.out_edges(n))
      depth[child] = std::max(depth[child], depth[n] + 1);
  return depth;
}

// Node ids sorted by (depth ascending, id ascending): the sweep order for
// top-down passes.
inline std::vector<NodeId> depth_order(const SystemGraph& g) {
  auto depth = compute_depths(g);
  std::vector<NodeId> order = g.node_ids();
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return depth[a] != depth[b] ? depth[a] < depth[b] : a < b; });
  return order;
}

// (depth descending, id ascending): the sweep order for bottom-up passes.
// Within one depth the id still ascends, which fixes the collection order
// when several same-depth parents compete for a shared child.
inline std::vector<NodeId> bottom_up_order(const SystemGraph& g) {
  auto depth = compute_depths(g);
  std::vector<NodeId> order = g.node_ids();
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return depth[a] != depth[b] ? depth[a] > depth[b] : a < b; });
  return order;
}

inline double total_assets(const SystemGraph& g) {
  double sum = 0.0;
  g.for_each_node([&](NodeId, const NodeState& st) { sum += st.total_assets(); });
  return sum;
}

// Sum of assets over every node reachable from `start` (including itself).
// Each node counts once even when reachable along several paths.
inline double subtree_assets(const SystemGraph& g, NodeId start) {
  std::vector<NodeId> stack{start};
  std::vector<NodeId> seen;
  double sum = 0.0;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    auto it = std::lower_bound(seen.begin(), seen.end(), n);
    if (it != seen.end() && *it == n) continue;
    seen.insert(it, n);
    sum += g.state(n).total_assets();
    for (const auto& [child, flows] : g.out_edges(n)) stack.push_back(child);
  }
  return sum;
}

// Puts a freshly built graph into flow equilibrium: every node reports its
// subtree content upward, every grant matches it, and no profit has been
// observed yet. Without this, step 0 would open with a spurious pressure
// spike on every edge.
inline void bootstrap_flows(SystemGraph& g) {
  std::map<NodeId, double> subtree;
  g.for_each_node([&](NodeId id, const NodeState&) { subtree[id] = subtree_assets(g, id); });
  for (NodeId id : g.node_ids()) {
    NodeState& st = g.state(id);
    st.up_assets_out = subtree[id];
    st.up_profit_out = 0.0;
    for (auto& [child, flows] : g.out_edges(id)) {
      flows.up_assets = subtree[child];
      flows.up_profit = 0.0;
      flows.down_assets = subtree[child];
    }
  }
}

}  // namespace msad
