#pragma once

#include <utility>
#include <vector>

#include "cdst/arborescence.hpp"
#include "cdst/instance.hpp"

namespace cdst {

using EdgeList = std::vector<std::pair<PointId, PointId>>;

/// Largest |T| + 1 accepted by exact_steiner.
inline constexpr std::size_t kExactSteinerLimit = 16;

/// Minimum spanning tree of the metric closure over the root and the
/// terminals (a 2-approximate Steiner tree). Ties go to the smaller point
/// index, so the result is deterministic.
EdgeList mst_steiner(const Instance& instance);

/// Minimum-length Steiner tree using any instance point as a Steiner point
/// (Dreyfus-Wagner). Refuses more than kExactSteinerLimit required points.
EdgeList exact_steiner(const Instance& instance);

/// Orients `tree` away from the root and reshapes it so terminals are
/// leaves and Steiner nodes have exactly two children. The root keeps its
/// out-degree. Internal terminals become a co-located Steiner node with a
/// zero-cost leaf edge; wide nodes become chains of co-located Steiner
/// nodes; Steiner nodes with one child are bypassed and Steiner leaves
/// dropped. Throws StructuralError if `tree` does not span the terminals.
Arborescence binarize(const EdgeList& tree, const Instance& instance);

/// Prim's algorithm over the metric closure of `points` (first point is the
/// start). Returns closure edges.
EdgeList closure_mst(const Instance& instance, const std::vector<PointId>& points);

}  // namespace cdst
