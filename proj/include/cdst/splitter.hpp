#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cdst/arborescence.hpp"
#include "cdst/instance.hpp"

namespace cdst {

/// Per-subtree quantities maintained bottom-up.
///   W  = total terminal weight
///   D  = sum of w(t) * c(r, t) over the subtree's terminals
///   C  = total edge cost
///   S1 = sum over edges (p,q) of W_q * (W - W_q) * c(p,q)
///   S2 = sum over edges (p,q) of W_q * c(p,q)
/// S2 equals the weighted path length from the subtree root to its terminals.
struct NodeAggregates {
  double W = 0.0;
  double D = 0.0;
  double C = 0.0;
  double S1 = 0.0;
  double S2 = 0.0;
};

/// Leaf values for a node at `point` (zero unless it is a terminal copy).
NodeAggregates leaf_aggregates(const ArbNode& node, const Instance& instance);

/// Folds child x, hanging by an edge of cost `edge`, into `v`. Call once per
/// child after v.W already holds the final subtree weight.
void fold_child(NodeAggregates& v, const NodeAggregates& x, double edge);

/// Aggregates of every node of an uncut arborescence, in O(|V|).
std::vector<NodeAggregates> compute_aggregates(const Arborescence& arb, const Instance& instance);

/// Both sides of the cut-off test for the edge (v, z) entering subtree z.
struct Criterion {
  double lhs;
  double rhs;
  bool holds() const;  // lhs <= rhs, with 1e-12 relative slack for rounding
};

/// lhs = 2*S1/W + D/W,  rhs = mu/2 * (C + c(v,z)) + D/mu.  Requires W > 0.
Criterion criterion_lhs_rhs(const NodeAggregates& z, double parent_edge_cost, double mu);

struct Component {
  Arborescence tree;
  std::optional<double> cut_edge_cost;  // empty for the root component
  NodeAggregates aggregates;
};

struct SplitResult {
  Component root_component;
  std::vector<Component> cut;             // in the order the edges were removed
  std::vector<NodeAggregates> aggregates;  // per input node, after removals below it
  std::vector<bool> removed;              // per input node: edge to its parent removed
  std::size_t node_visits = 0;
};

/// Bottom-up split that removes edge (v,z) whenever W_z > 0 and the
/// criterion holds. Every child subtree left at the root then weighs at
/// most mu; a violation throws InvariantError.
SplitResult split_improved(const Arborescence& arb, const Instance& instance, double mu);

/// Bottom-up split that removes edge (x,y) whenever W_y > mu.
SplitResult split_baseline(const Arborescence& arb, const Instance& instance, double mu);

}  // namespace cdst
