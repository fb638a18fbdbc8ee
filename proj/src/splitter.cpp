#include "cdst/splitter.hpp"

#include <cmath>
#include <string>

#include "cdst/errors.hpp"

namespace cdst {

NodeAggregates leaf_aggregates(const ArbNode& node, const Instance& instance) {
  NodeAggregates a;
  if (node.kind == NodeKind::kTerminal) {
    a.W = instance.weight(node.point);
    a.D = a.W * instance.root_distance(node.point);
  }
  return a;
}

void fold_child(NodeAggregates& v, const NodeAggregates& x, double edge) {
  const double rest = v.W - x.W;
  v.D += x.D;
  v.C += x.C + edge;
  v.S1 += x.S1 + rest * x.S2 + x.W * rest * edge;
  v.S2 += x.S2 + x.W * edge;
}

namespace {

// Shared bottom-up pass. `remove(z, agg_z)` decides whether the edge into z
// goes; removed subtrees are not folded into their parent.
template <typename Remove>
SplitResult split_with(const Arborescence& arb, const Instance& instance, Remove&& remove) {
  SplitResult out;
  const std::size_t n = arb.size();
  out.aggregates.resize(n);
  out.removed.assign(n, false);
  std::vector<NodeId> cut_order;

  for (NodeId v : arb.post_order()) {
    const auto& node = arb.node(v);
    auto& agg = out.aggregates[v];
    agg = leaf_aggregates(node, instance);
    for (NodeId x : node.children)
      if (!out.removed[x]) agg.W += out.aggregates[x].W;
    for (NodeId x : node.children) {
      ++out.node_visits;
      if (!out.removed[x]) fold_child(agg, out.aggregates[x], arb.node(x).parent_cost);
    }
    ++out.node_visits;
    if (v != arb.root() && remove(v, agg)) {
      out.removed[v] = true;
      cut_order.push_back(v);
    }
  }

  auto skip = [&](NodeId c) { return static_cast<bool>(out.removed[c]); };
  out.root_component = {arb.extract(arb.root(), skip), std::nullopt, out.aggregates[arb.root()]};
  out.cut.reserve(cut_order.size());
  for (NodeId z : cut_order)
    out.cut.push_back({arb.extract(z, skip), arb.node(z).parent_cost, out.aggregates[z]});
  return out;
}

}  // namespace

std::vector<NodeAggregates> compute_aggregates(const Arborescence& arb, const Instance& instance) {
  return split_with(arb, instance, [](NodeId, const NodeAggregates&) { return false; }).aggregates;
}

bool Criterion::holds() const {
  return lhs <= rhs + 1e-12 * (std::abs(lhs) + std::abs(rhs));
}

Criterion criterion_lhs_rhs(const NodeAggregates& z, double parent_edge_cost, double mu) {
  return {2.0 * z.S1 / z.W + z.D / z.W, mu / 2.0 * (z.C + parent_edge_cost) + z.D / mu};
}

SplitResult split_improved(const Arborescence& arb, const Instance& instance, double mu) {
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  auto result = split_with(arb, instance, [&](NodeId z, const NodeAggregates& agg) {
    return agg.W > 0.0 && criterion_lhs_rhs(agg, arb.node(z).parent_cost, mu).holds();
  });
  for (NodeId x : arb.node(arb.root()).children) {
    if (result.removed[x]) continue;
    const double w = result.aggregates[x].W;
    if (w > mu * (1.0 + kAuditTolerance))
      throw InvariantError("root child '" + instance.id(arb.node(x).point) + "' keeps weight " +
                           std::to_string(w) + " > mu = " + std::to_string(mu));
  }
  return result;
}

SplitResult split_baseline(const Arborescence& arb, const Instance& instance, double mu) {
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  return split_with(arb, instance, [&](NodeId, const NodeAggregates& agg) { return agg.W > mu; });
}

}  // namespace cdst
