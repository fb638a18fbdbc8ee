#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cdst/instance.hpp"

namespace cdst {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

enum class NodeKind : std::uint8_t { kRoot, kTerminal, kSteiner };

struct ArbNode {
  PointId point = kNoPoint;
  NodeKind kind = NodeKind::kSteiner;
  NodeId parent = kNoNode;
  double parent_cost = 0.0;
  std::vector<NodeId> children;
};

/// Rooted tree over instance points. Several nodes may share a point
/// (co-located copies joined by zero-cost edges).
class Arborescence {
 public:
  Arborescence() = default;

  /// Adds the root (parent == kNoNode) or a child of an existing node.
  NodeId add_node(PointId point, NodeKind kind, NodeId parent = kNoNode,
                  double parent_cost = 0.0);

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const ArbNode& node(NodeId v) const { return nodes_[v]; }
  const std::vector<ArbNode>& nodes() const { return nodes_; }

  /// Children before parents. Iterative, safe on deep chains.
  std::vector<NodeId> post_order() const;
  /// Parents before children.
  std::vector<NodeId> pre_order() const;

  double total_cost() const;

  /// Point-level edges, dropping edges between co-located copies.
  std::vector<std::pair<PointId, PointId>> point_edges() const;

  /// Copy of the subtree below `top`, skipping any child for which
  /// skip(child) is true. `top` becomes the root of the copy.
  template <typename Skip>
  Arborescence extract(NodeId top, Skip&& skip) const;

 private:
  std::vector<ArbNode> nodes_;
  NodeId root_ = kNoNode;
};

/// Violations of the binary shape required of an initial arborescence:
/// terminals are leaves, Steiner nodes have exactly two children, each
/// terminal appears exactly once, and edge costs match the metric.
/// Empty when the arborescence is well formed.
std::vector<std::string> check_binary(const Arborescence& arb, const Instance& instance);

template <typename Skip>
Arborescence Arborescence::extract(NodeId top, Skip&& skip) const {
  Arborescence out;
  std::vector<std::pair<NodeId, NodeId>> stack{{top, kNoNode}};
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    const auto& src = nodes_[v];
    const NodeId copy = out.add_node(src.point, src.kind, parent,
                                     parent == kNoNode ? 0.0 : src.parent_cost);
    // Reverse push keeps the child order of the source.
    for (auto it = src.children.rbegin(); it != src.children.rend(); ++it)
      if (!skip(*it)) stack.emplace_back(*it, copy);
  }
  return out;
}

}  // namespace cdst
