#include "cdst/steiner_init.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "cdst/errors.hpp"
#include "cdst/kernels.hpp"
#include "cdst/solution.hpp"

namespace cdst {

EdgeList closure_mst(const Instance& instance, const std::vector<PointId>& points) {
  const std::size_t k = points.size();
  EdgeList edges;
  if (k < 2) return edges;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> key(k, kInf);
  std::vector<std::size_t> from(k, 0);
  std::vector<bool> done(k, false);
  key[0] = 0.0;
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (done[i]) continue;
      if (best == k || key[i] < key[best] ||
          (key[i] == key[best] && points[i] < points[best]))
        best = i;
    }
    done[best] = true;
    if (round > 0) edges.emplace_back(points[from[best]], points[best]);
    for (std::size_t i = 0; i < k; ++i) {
      if (done[i]) continue;
      const double d = instance.distance(points[best], points[i]);
      if (d < key[i]) {
        key[i] = d;
        from[i] = best;
      }
    }
  }
  return edges;
}

EdgeList mst_steiner(const Instance& instance) {
  return closure_mst(instance, instance.required_points());
}

namespace {

// Keeps only edges on paths between required points.
EdgeList prune_steiner_leaves(const Instance& instance, EdgeList edges) {
  const std::size_t n = instance.num_points();
  for (;;) {
    std::vector<int> degree(n, 0);
    for (const auto& [u, v] : edges) {
      ++degree[u];
      ++degree[v];
    }
    auto removable = [&](PointId p) {
      return degree[p] == 1 && p != instance.root() && !instance.is_terminal(p);
    };
    const auto before = edges.size();
    std::erase_if(edges, [&](const auto& e) { return removable(e.first) || removable(e.second); });
    if (edges.size() == before) return edges;
  }
}

}  // namespace

EdgeList exact_steiner(const Instance& instance) {
  const auto required = instance.required_points();
  if (required.size() > kExactSteinerLimit)
    throw ValidationError("exact Steiner tree limited to " + std::to_string(kExactSteinerLimit) +
                          " root+terminal points, got " + std::to_string(required.size()));
  const std::size_t n = instance.num_points();
  std::vector<double> dist(n * n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b) dist[a * n + b] = instance.distance(a, b);

  std::vector<PointId> terminals(required.begin() + 1, required.end());
  const kernels::SteinerTable table(dist, n, terminals);
  auto raw = table.edges(instance.root());

  // The DP tree can revisit a vertex when ties exist; re-span its vertex set.
  std::set<PointId> used(required.begin(), required.end());
  for (const auto& [u, v] : raw) {
    used.insert(u);
    used.insert(v);
  }
  std::vector<PointId> points{instance.root()};
  for (PointId p : used)
    if (p != instance.root()) points.push_back(p);
  return prune_steiner_leaves(instance, closure_mst(instance, points));
}

Arborescence binarize(const EdgeList& tree, const Instance& instance) {
  Solution probe{tree, {}};
  evaluate_cost(instance, probe);  // tree shape and terminal coverage

  const std::size_t n = instance.num_points();
  const PointId root = instance.root();
  std::vector<std::vector<PointId>> adj(n);
  for (const auto& [u, v] : tree) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  // Orient and mark vertices whose subtree holds a terminal.
  std::vector<PointId> parent(n, kNoPoint), order;
  std::vector<bool> visited(n, false);
  std::vector<PointId> stack{root};
  visited[root] = true;
  while (!stack.empty()) {
    const PointId u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (PointId v : adj[u])
      if (!visited[v]) {
        visited[v] = true;
        parent[v] = u;
        stack.push_back(v);
      }
  }
  std::vector<bool> useful(n, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const PointId u = *it;
    if (instance.is_terminal(u)) useful[u] = true;
    if (useful[u] && parent[u] != kNoPoint) useful[parent[u]] = true;
  }
  std::vector<std::vector<PointId>> children(n);
  for (PointId u : order)
    if (parent[u] != kNoPoint && useful[u]) children[parent[u]].push_back(u);
  for (auto& ch : children) std::sort(ch.begin(), ch.end());

  Arborescence arb;
  // Task: place original vertex `point` below arborescence node `under`.
  // kNoPoint as `point` with a terminal id in `leaf` adds a terminal copy.
  struct Task {
    PointId point;
    NodeId under;
    bool terminal_leaf;
  };
  std::vector<Task> tasks;
  const NodeId top = arb.add_node(root, NodeKind::kRoot);
  for (auto it = children[root].rbegin(); it != children[root].rend(); ++it)
    tasks.push_back({*it, top, false});

  auto cost_from = [&](NodeId under, PointId p) {
    return instance.distance(arb.node(under).point, p);
  };

  while (!tasks.empty()) {
    const Task task = tasks.back();
    tasks.pop_back();
    const PointId u = task.point;
    if (task.terminal_leaf) {
      arb.add_node(u, NodeKind::kTerminal, task.under, 0.0);
      continue;
    }
    const auto& ch = children[u];
    const bool terminal = instance.is_terminal(u);
    if (terminal && ch.empty()) {
      arb.add_node(u, NodeKind::kTerminal, task.under, cost_from(task.under, u));
      continue;
    }
    if (!terminal && ch.size() == 1) {
      tasks.push_back({ch.front(), task.under, false});
      continue;
    }
    // Items hung below a chain of Steiner copies of u.
    std::vector<Task> items;
    if (terminal) items.push_back({u, kNoNode, true});
    for (PointId c : ch) items.push_back({c, kNoNode, false});

    NodeId current = arb.add_node(u, NodeKind::kSteiner, task.under, cost_from(task.under, u));
    std::vector<Task> placed;
    for (std::size_t i = 0; i + 2 < items.size(); ++i) {
      placed.push_back({items[i].point, current, items[i].terminal_leaf});
      current = arb.add_node(u, NodeKind::kSteiner, current, 0.0);
    }
    placed.push_back({items[items.size() - 2].point, current, items[items.size() - 2].terminal_leaf});
    placed.push_back({items.back().point, current, items.back().terminal_leaf});
    for (auto it = placed.rbegin(); it != placed.rend(); ++it) tasks.push_back(*it);
  }
  return arb;
}

}  // namespace cdst
