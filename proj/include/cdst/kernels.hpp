#pragma once

// Data-parallel kernels. Each OpenMP kernel has a plain serial counterpart
// that is kept as a test reference and as the baseline in bench/.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cdst/instance.hpp"

namespace cdst::kernels {

/// Compressed adjacency of an undirected weighted graph.
struct Adjacency {
  std::size_t num_vertices = 0;
  std::vector<std::size_t> offsets;
  std::vector<PointId> targets;
  std::vector<double> lengths;
};

Adjacency build_adjacency(std::size_t num_vertices, std::span<const GraphEdge> edges);

/// Single-source shortest paths (binary-heap Dijkstra).
std::vector<double> dijkstra(const Adjacency& graph, PointId source);

/// Row-major n x n shortest-path matrix, one Dijkstra per source in parallel.
std::vector<double> all_pairs(const Adjacency& graph);

/// Floyd-Warshall reference for all_pairs.
std::vector<double> all_pairs_serial(const Adjacency& graph);

/// Largest amount by which d(i,k) exceeds d(i,j) + d(j,k), also covering
/// asymmetry, nonzero diagonal and negative entries. 0 for a metric.
double triangle_violation(std::span<const double> dist, std::size_t n);
double triangle_violation_serial(std::span<const double> dist, std::size_t n);

/// Dreyfus-Wagner table over a complete metric on n points. Terminal i is
/// bit i of a subset mask; the tree joins all terminals and `anchor`.
class SteinerTable {
 public:
  SteinerTable(std::span<const double> dist, std::size_t n,
               std::span<const PointId> terminals);

  double optimum(PointId anchor) const { return cost(full_mask(), anchor); }

  /// Closure edges of one optimum tree (may repeat vertices; callers clean up).
  std::vector<std::pair<PointId, PointId>> edges(PointId anchor) const;

 private:
  std::uint32_t full_mask() const { return (1u << terminals_.size()) - 1; }
  double cost(std::uint32_t mask, PointId v) const { return dp_[mask * n_ + v]; }

  std::size_t n_;
  std::vector<PointId> terminals_;
  std::vector<double> dp_;              // (mask, v) -> tree cost
  std::vector<PointId> join_;           // (mask, v) -> vertex u where subsets meet
  std::vector<std::uint32_t> split_;    // (mask, u) -> submask used at u
  std::vector<double> dist_;
};

/// Plain subset-DP reference returning only the optimum value.
double steiner_optimum_serial(std::span<const double> dist, std::size_t n,
                              std::span<const PointId> terminals, PointId anchor);

}  // namespace cdst::kernels
