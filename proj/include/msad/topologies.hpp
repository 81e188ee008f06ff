// Factory for the six benchmark control topologies. All of them drive four
// service leaves over the region interval (the growable tree starts with two
// coarser leaves), differing only in how decision nodes are wired above them.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "msad/graph.hpp"

namespace msad {

enum class TopologyKind { GrowableTree, FixedTree, Line, Circle, Complete, AllToRoot };

inline const char* to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::GrowableTree: return "growable";
    case TopologyKind::FixedTree: return "fixed_tree";
    case TopologyKind::Line: return "line";
    case TopologyKind::Circle: return "circle";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::AllToRoot: return "all_to_root";
  }
  return "unknown";
}

inline std::optional<TopologyKind> topology_from_name(std::string_view name) {
  if (name == "growable") return TopologyKind::GrowableTree;
  if (name == "fixed_tree") return TopologyKind::FixedTree;
  if (name == "line") return TopologyKind::Line;
  if (name == "circle") return TopologyKind::Circle;
  if (name == "complete") return TopologyKind::Complete;
  if (name == "all_to_root") return TopologyKind::AllToRoot;
  return std::nullopt;
}

inline const std::vector<TopologyKind>& all_topology_kinds() {
  static const std::vector<TopologyKind> kinds = {
      TopologyKind::GrowableTree, TopologyKind::FixedTree, TopologyKind::Line,
      TopologyKind::Circle,       TopologyKind::Complete,  TopologyKind::AllToRoot};
  return kinds;
}

inline int initial_leaf_count(TopologyKind kind) {
  return kind == TopologyKind::GrowableTree ? 2 : 4;
}

// Builds the requested topology with total_assets divided equally among the
// service leaves, each leaf supporting a contiguous block of regions, and all
// flows bootstrapped to equilibrium. num_regions must be divisible by the
// leaf count.
inline SystemGraph build_topology(TopologyKind kind, int num_regions, double total_assets) {
  const int leaves = initial_leaf_count(kind);
  if (num_regions < leaves || num_regions % leaves != 0)
    throw std::invalid_argument(std::string("num_regions must be a positive multiple of ") +
                                std::to_string(leaves) + " for topology " + to_string(kind));
  if (total_assets < 0.0) throw std::invalid_argument("total_assets must be >= 0");

  const int block = num_regions / leaves;
  const double per_leaf = total_assets / static_cast<double>(leaves);
  auto leaf_regions = [&](int leaf_index) {
    std::vector<int> regions;
    for (int r = leaf_index * block + 1; r <= (leaf_index + 1) * block; ++r) regions.push_back(r);
    return regions;
  };

  SystemGraph g;
  switch (kind) {
    case TopologyKind::GrowableTree:
    case TopologyKind::AllToRoot: {
      NodeId root = g.add_decision_node();
      for (int i = 0; i < leaves; ++i) {
        NodeId leaf = g.add_service_node(leaf_regions(i), per_leaf);
        g.add_edge(root, leaf);
      }
      break;
    }
    case TopologyKind::FixedTree: {
      NodeId root = g.add_decision_node();
      NodeId left = g.add_decision_node();
      NodeId right = g.add_decision_node();
      g.add_edge(root, left);
      g.add_edge(root, right);
      for (int i = 0; i < leaves; ++i) {
        NodeId leaf = g.add_service_node(leaf_regions(i), per_leaf);
        g.add_edge(i < leaves / 2 ? left : right, leaf);
      }
      break;
    }
    case TopologyKind::Line:
    case TopologyKind::Circle:
    case TopologyKind::Complete: {
      std::vector<std::pair<int, int>> pairs;
      if (kind == TopologyKind::Complete) {
        for (int i = 0; i < leaves; ++i)
          for (int j = i + 1; j < leaves; ++j) pairs.emplace_back(i, j);
      } else {
        for (int i = 0; i + 1 < leaves; ++i) pairs.emplace_back(i, i + 1);
        if (kind == TopologyKind::Circle) pairs.emplace_back(leaves - 1, 0);
      }
      std::vector<NodeId> roots;
      for (std::size_t i = 0; i < pairs.size(); ++i) roots.push_back(g.add_decision_node());
      std::vector<NodeId> leaf_ids;
      for (int i = 0; i < leaves; ++i) leaf_ids.push_back(g.add_service_node(leaf_regions(i), per_leaf));
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        g.add_edge(roots[i], leaf_ids[static_cast<std::size_t>(pairs[i].first)]);
        g.add_edge(roots[i], leaf_ids[static_cast<std::size_t>(pairs[i].second)]);
      }
      break;
    }
  }
  bootstrap_flows(g);
  return g;
}

}  // namespace msad
