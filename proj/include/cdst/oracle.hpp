#pragma once

// Brute-force references. Every routine here is deliberately independent of
// the incremental code paths it is used to check.

#include <vector>

#include "cdst/arborescence.hpp"
#include "cdst/instance.hpp"
#include "cdst/solution.hpp"
#include "cdst/splitter.hpp"

namespace cdst::oracle {

inline constexpr std::size_t kMaxVertices = 12;
inline constexpr std::size_t kMaxEdges = 20;

struct OptResult {
  Solution solution;
  double value = 0.0;
  std::size_t nodes_explored = 0;
};

/// Candidate edges searched by the oracles: the graph's edges (with their
/// metric length) for graph instances, all point pairs otherwise.
std::vector<GraphEdge> candidate_edges(const Instance& instance);

/// Exact optimum of connection + delay cost over all subtrees of the
/// candidate graph that contain the root and every terminal. Branch and
/// bound; refuses instances with more than kMaxVertices vertices and more
/// than kMaxEdges candidate edges.
OptResult brute_force_opt(const Instance& instance);

/// Minimum Steiner tree length by enumerating Steiner point subsets and
/// taking the metric-closure MST of each. Same size guard.
double exhaustive_smt(const Instance& instance);

/// O(n^2) recomputation of the five aggregates from their definitions.
std::vector<NodeAggregates> naive_aggregates(const Arborescence& arb, const Instance& instance);

/// O(n^2) port costs by walking tree paths from every node.
std::vector<double> naive_port_costs(const Arborescence& component, const Instance& instance);

/// Reference improved splitter that re-evaluates the cut criterion from
/// explicit edge sums at every edge. Returns the per-node removal flags.
std::vector<bool> naive_split_improved(const Arborescence& arb, const Instance& instance,
                                       double mu);

}  // namespace cdst::oracle
