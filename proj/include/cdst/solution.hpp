#pragma once

#include <utility>
#include <vector>

#include "cdst/instance.hpp"

namespace cdst {

struct CostBreakdown {
  double connection = 0.0;
  double delay = 0.0;
  double total = 0.0;
};

/// An undirected edge set over instance points. Costs are filled in by
/// evaluate_cost and never trusted from outside.
struct Solution {
  std::vector<std::pair<PointId, PointId>> edges;
  CostBreakdown costs;
};

/// Connection cost plus weighted root-path lengths. Throws StructuralError
/// if the edges are not a tree containing the root and every terminal.
CostBreakdown evaluate_cost(const Instance& instance, const Solution& solution);

/// D(T, r, w): sum of w(t) * c(r, t).
double delay_lower_bound(const Instance& instance);

/// smt_cost + D(T, r, w).
double lower_bound(const Instance& instance, double smt_cost);

/// Sum of metric lengths of an edge list.
double edge_length(const Instance& instance,
                   const std::vector<std::pair<PointId, PointId>>& edges);

}  // namespace cdst
