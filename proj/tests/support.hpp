#pragma once

// Instance builders and independent reference computations shared by the
// unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cdst/arborescence.hpp"
#include "cdst/instance.hpp"
#include "cdst/solution.hpp"
#include "cdst/steiner_init.hpp"

namespace cdst::testing {

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

/// Root plus n points, every pair at distance 1.
inline Instance unit_instance(const std::vector<double>& weights) {
  const std::size_t n = weights.size() + 1;
  MatrixMetric m;
  m.distances.assign(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) m.distances[i * n + i] = 0.0;
  std::vector<std::string> ids{"r"};
  std::vector<Terminal> terms;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ids.push_back("t" + std::to_string(i));
    terms.push_back({static_cast<PointId>(i + 1), weights[i]});
  }
  return Instance(std::move(ids), std::move(m), 0, std::move(terms));
}

/// The six-point example: weights 1,0,0,0,0,1 and the initial path
/// r -> t5 -> t4 -> t3 -> t2 -> t1 -> t0.
inline Instance six_point_instance() { return unit_instance({1, 0, 0, 0, 0, 1}); }

inline EdgeList six_point_initial() { return {{0, 6}, {6, 5}, {5, 4}, {4, 3}, {3, 2}, {2, 1}}; }

/// Euclidean points with the first one as root.
inline Instance euclid_instance(const std::vector<std::pair<double, double>>& pts,
                                const std::vector<std::pair<std::size_t, double>>& terminals) {
  EuclideanMetric m;
  for (auto [x, y] : pts) m.coords.insert(m.coords.end(), {x, y});
  std::vector<Terminal> t;
  for (auto [p, w] : terminals) t.push_back({static_cast<PointId>(p), w});
  return Instance(names(pts.size()), std::move(m), 0, std::move(t));
}

/// Random connected graph on n vertices with `extra` edges beyond a random
/// spanning tree. Vertex 0 is the root; `n_terminals` other vertices are
/// terminals with mixed zero and positive weights.
inline Instance random_graph(std::size_t n, std::size_t n_terminals, std::size_t extra,
                             std::mt19937_64& rng, double zero_weight_prob = 0.25) {
  std::uniform_real_distribution<double> len(0.5, 5.0), u(0.0, 1.0);
  GraphMetric g;
  std::set<std::pair<PointId, PointId>> seen;
  for (PointId v = 1; v < n; ++v) {
    const auto p = static_cast<PointId>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    g.edges.push_back({p, v, len(rng)});
    seen.emplace(p, v);
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  while (g.edges.size() < std::min(max_edges, n - 1 + extra)) {
    auto a = static_cast<PointId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    auto b = static_cast<PointId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.emplace(a, b).second) continue;
    g.edges.push_back({a, b, len(rng)});
  }
  std::vector<PointId> others(n - 1);
  std::iota(others.begin(), others.end(), 1);
  std::shuffle(others.begin(), others.end(), rng);
  std::vector<Terminal> terms;
  for (std::size_t i = 0; i < std::min(n_terminals, n - 1); ++i)
    terms.push_back({others[i], u(rng) < zero_weight_prob ? 0.0 : 0.05 + 2.0 * u(rng)});
  return Instance(names(n), std::move(g), 0, std::move(terms));
}

/// Random Euclidean points with a random recursive tree over them. Every
/// point except the root is a terminal (so the tree has no Steiner points
/// and binarizing it preserves cost exactly) unless `steiner_fraction` > 0.
struct RandomTree {
  Instance instance;
  EdgeList edges;
};

inline RandomTree random_tree(std::size_t n, std::mt19937_64& rng, double steiner_fraction = 0.0,
                              double zero_weight_prob = 0.3) {
  std::uniform_real_distribution<double> coord(0.0, 10.0), u(0.0, 1.0);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
  std::vector<std::pair<std::size_t, double>> terms;
  for (std::size_t i = 1; i < n; ++i) {
    if (u(rng) < steiner_fraction) continue;
    terms.emplace_back(i, u(rng) < zero_weight_prob ? 0.0 : 0.01 + 2.0 * u(rng));
  }
  if (terms.empty()) terms.emplace_back(n - 1, 1.0);
  EdgeList edges;
  for (std::size_t v = 1; v < n; ++v) {
    // Bias towards recent points so trees get deep as well as wide.
    const std::size_t lo = v > 6 && u(rng) < 0.6 ? v - 6 : 0;
    const auto p = std::uniform_int_distribution<std::size_t>(lo, v - 1)(rng);
    edges.emplace_back(static_cast<PointId>(p), static_cast<PointId>(v));
  }
  return {euclid_instance(pts, terms), std::move(edges)};
}

/// Cost by walking every terminal's path to the root separately.
inline CostBreakdown path_walk_cost(const Instance& inst, const EdgeList& edges) {
  const std::size_t n = inst.num_points();
  std::vector<std::vector<PointId>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<PointId> parent(n, kNoPoint);
  std::vector<bool> seen(n, false);
  std::vector<PointId> queue{inst.root()};
  seen[inst.root()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (PointId v : adj[queue[i]])
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = queue[i];
        queue.push_back(v);
      }
  CostBreakdown c;
  for (auto [a, b] : edges) c.connection += inst.distance(a, b);
  for (const auto& t : inst.terminals()) {
    double len = 0.0;
    for (PointId v = t.point; v != inst.root(); v = parent[v]) len += inst.distance(v, parent[v]);
    c.delay += t.weight * len;
  }
  c.total = c.connection + c.delay;
  return c;
}

/// Rebuilds `arb` with every child list permuted. `map[old] = new`.
inline Arborescence shuffled_copy(const Arborescence& arb, std::mt19937_64& rng,
                                  std::vector<NodeId>& map) {
  Arborescence out;
  map.assign(arb.size(), kNoNode);
  std::vector<NodeId> stack{arb.root()};
  map[arb.root()] = out.add_node(arb.node(arb.root()).point, NodeKind::kRoot);
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    auto kids = arb.node(v).children;
    std::shuffle(kids.begin(), kids.end(), rng);
    for (NodeId c : kids) {
      const auto& n = arb.node(c);
      map[c] = out.add_node(n.point, n.kind, map[v], n.parent_cost);
      stack.push_back(c);
    }
  }
  return out;
}

/// Multiset of sorted point lists, one per component; order-free comparison.
inline std::multiset<std::vector<PointId>> point_sets(const std::vector<Arborescence>& trees) {
  std::multiset<std::vector<PointId>> out;
  for (const auto& t : trees) {
    std::vector<PointId> pts;
    for (const auto& n : t.nodes()) pts.push_back(n.point);
    std::sort(pts.begin(), pts.end());
    out.insert(pts);
  }
  return out;
}

inline bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace cdst::testing
