#include "cdst/arborescence.hpp"

#include <algorithm>
#include <cmath>

#include "cdst/errors.hpp"

namespace cdst {

NodeId Arborescence::add_node(PointId point, NodeKind kind, NodeId parent, double parent_cost) {
  const auto id = static_cast<NodeId>(nodes_.size());
  if (parent == kNoNode) {
    if (root_ != kNoNode) throw InvariantError("arborescence already has a root");
    root_ = id;
    parent_cost = 0.0;
  }
  nodes_.push_back(ArbNode{point, kind, parent, parent_cost, {}});
  if (parent != kNoNode) nodes_[parent].children.push_back(id);
  return id;
}

std::vector<NodeId> Arborescence::pre_order() const {
  std::vector<NodeId> order;
  if (root_ == kNoNode) return order;
  order.reserve(nodes_.size());
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = nodes_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<NodeId> Arborescence::post_order() const {
  std::vector<NodeId> order;
  if (root_ == kNoNode) return order;
  order.reserve(nodes_.size());
  // (node, next child index)
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& ch = nodes_[v].children;
    if (next < ch.size()) {
      const NodeId c = ch[next++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
  return order;
}

double Arborescence::total_cost() const {
  double c = 0.0;
  for (const auto& n : nodes_) c += n.parent_cost;
  return c;
}

std::vector<std::pair<PointId, PointId>> Arborescence::point_edges() const {
  std::vector<std::pair<PointId, PointId>> out;
  for (const auto& n : nodes_) {
    if (n.parent == kNoNode) continue;
    const PointId p = nodes_[n.parent].point;
    if (p != n.point) out.emplace_back(p, n.point);
  }
  return out;
}

std::vector<std::string> check_binary(const Arborescence& arb, const Instance& instance) {
  std::vector<std::string> problems;
  if (arb.empty()) return {"arborescence is empty"};
  const auto& root = arb.node(arb.root());
  if (root.kind != NodeKind::kRoot || root.point != instance.root())
    problems.push_back("root node is not the instance root");
  std::vector<int> seen(instance.num_points(), 0);
  for (NodeId v = 0; v < arb.size(); ++v) {
    const auto& n = arb.node(v);
    const std::string where = "node " + std::to_string(v) + " ('" + instance.id(n.point) + "')";
    switch (n.kind) {
      case NodeKind::kTerminal:
        if (!instance.is_terminal(n.point)) problems.push_back(where + " is not a terminal");
        if (!n.children.empty()) problems.push_back(where + ": terminal with children");
        ++seen[n.point];
        break;
      case NodeKind::kSteiner:
        if (n.children.size() != 2) problems.push_back(where + ": Steiner out-degree " +
                                                       std::to_string(n.children.size()));
        break;
      case NodeKind::kRoot:
        if (v != arb.root()) problems.push_back(where + ": second root");
        break;
    }
    if (n.parent != kNoNode) {
      const double c = instance.distance(arb.node(n.parent).point, n.point);
      if (std::abs(c - n.parent_cost) > kAuditTolerance * std::max(1.0, c))
        problems.push_back(where + ": edge cost differs from metric");
    }
  }
  for (const auto& t : instance.terminals())
    if (seen[t.point] != 1)
      problems.push_back("terminal '" + instance.id(t.point) + "' appears " +
                         std::to_string(seen[t.point]) + " times");
  return problems;
}

}  // namespace cdst
