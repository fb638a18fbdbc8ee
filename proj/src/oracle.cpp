#include "cdst/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cdst/errors.hpp"
#include "cdst/steiner_init.hpp"

namespace cdst::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void guard(const Instance& instance, std::size_t edges) {
  const std::size_t n = instance.num_points();
  if (n > 64 || (n > kMaxVertices && edges > kMaxEdges))
    throw ValidationError("oracle limited to " + std::to_string(kMaxVertices) + " vertices or " +
                          std::to_string(kMaxEdges) + " edges; got " + std::to_string(n) +
                          " vertices, " + std::to_string(edges) + " edges");
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, std::vector<GraphEdge> edges)
      : inst_(instance), n_(instance.num_points()), edges_(std::move(edges)) {
    std::stable_sort(edges_.begin(), edges_.end(),
                     [](const GraphEdge& a, const GraphEdge& b) { return a.length < b.length; });
    excluded_.assign(edges_.size(), false);
    dist_.assign(n_, kInf);
    metric_.resize(n_ * n_);
    for (PointId a = 0; a < n_; ++a)
      for (PointId b = 0; b < n_; ++b) metric_[a * n_ + b] = instance.distance(a, b);
    for (const auto& t : instance.terminals()) terminals_.push_back(t);
  }

  OptResult run() {
    const PointId r = inst_.root();
    in_tree_ = std::uint64_t{1} << r;
    dist_[r] = 0.0;
    search();
    OptResult out;
    out.value = best_;
    out.nodes_explored = explored_;
    out.solution.edges = best_edges_;
    out.solution.costs = evaluate_cost(inst_, out.solution);
    return out;
  }

 private:
  bool inside(PointId p) const { return (in_tree_ >> p) & 1u; }

  // Lower bound on the finished cost of any completion of the current tree.
  double bound() const {
    double lb = conn_;
    std::vector<PointId> missing;
    for (const auto& t : terminals_) {
      if (inside(t.point)) {
        lb += t.weight * dist_[t.point];
        continue;
      }
      missing.push_back(t.point);
      double reach = kInf;
      for (PointId v = 0; v < n_; ++v)
        if (inside(v)) reach = std::min(reach, dist_[v] + metric_[v * n_ + t.point]);
      lb += t.weight * reach;
    }
    if (missing.empty()) return lb;
    // Steiner length to attach `missing` to the contracted tree is at least
    // half the MST over {tree} + missing, and at least the farthest single hop.
    const std::size_t m = missing.size();
    std::vector<double> to_tree(m, kInf);
    for (std::size_t i = 0; i < m; ++i)
      for (PointId v = 0; v < n_; ++v)
        if (inside(v)) to_tree[i] = std::min(to_tree[i], metric_[v * n_ + missing[i]]);
    double farthest = *std::max_element(to_tree.begin(), to_tree.end());
    std::vector<double> key = to_tree;
    std::vector<bool> done(m, false);
    double mst = 0.0;
    for (std::size_t round = 0; round < m; ++round) {
      std::size_t pick = m;
      for (std::size_t i = 0; i < m; ++i)
        if (!done[i] && (pick == m || key[i] < key[pick])) pick = i;
      done[pick] = true;
      mst += key[pick];
      for (std::size_t i = 0; i < m; ++i) {
        if (done[i]) continue;
        const double via = std::min(metric_[missing[pick] * n_ + missing[i]],
                                    to_tree[pick] + to_tree[i]);
        key[i] = std::min(key[i], via);
      }
    }
    return lb + std::max(mst / 2.0, farthest);
  }

  void search() {
    ++explored_;
    bool complete = true;
    for (const auto& t : terminals_) complete = complete && inside(t.point);
    if (complete) {
      double delay = 0.0;
      for (const auto& t : terminals_) delay += t.weight * dist_[t.point];
      if (conn_ + delay < best_) {
        best_ = conn_ + delay;
        best_edges_ = chosen_;
      }
      return;
    }
    if (bound() >= best_) return;
    std::size_t pick = edges_.size();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (excluded_[i]) continue;
      if (inside(edges_[i].u) != inside(edges_[i].v)) {
        pick = i;
        break;
      }
    }
    if (pick == edges_.size()) return;
    const auto& e = edges_[pick];
    const PointId from = inside(e.u) ? e.u : e.v;
    const PointId to = inside(e.u) ? e.v : e.u;

    in_tree_ |= std::uint64_t{1} << to;
    dist_[to] = dist_[from] + e.length;
    conn_ += e.length;
    chosen_.emplace_back(from, to);
    search();
    chosen_.pop_back();
    conn_ -= e.length;
    dist_[to] = kInf;
    in_tree_ &= ~(std::uint64_t{1} << to);

    excluded_[pick] = true;
    search();
    excluded_[pick] = false;
  }

  const Instance& inst_;
  std::size_t n_;
  std::vector<GraphEdge> edges_;
  std::vector<bool> excluded_;
  std::vector<double> dist_;
  std::vector<double> metric_;
  std::vector<Terminal> terminals_;
  std::uint64_t in_tree_ = 0;
  double conn_ = 0.0;
  std::vector<std::pair<PointId, PointId>> chosen_;
  double best_ = kInf;
  std::vector<std::pair<PointId, PointId>> best_edges_;
  std::size_t explored_ = 0;
};

}  // namespace

std::vector<GraphEdge> candidate_edges(const Instance& instance) {
  std::vector<GraphEdge> out;
  if (const auto* g = std::get_if<GraphMetric>(&instance.metric())) {
    std::map<std::pair<PointId, PointId>, bool> seen;
    for (const auto& e : g->edges) {
      if (e.u == e.v) continue;
      const auto key = std::minmax(e.u, e.v);
      if (seen.emplace(std::pair{key.first, key.second}, true).second)
        out.push_back({key.first, key.second, instance.distance(e.u, e.v)});
    }
    return out;
  }
  const auto n = static_cast<PointId>(instance.num_points());
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) out.push_back({a, b, instance.distance(a, b)});
  return out;
}

OptResult brute_force_opt(const Instance& instance) {
  auto edges = candidate_edges(instance);
  guard(instance, edges.size());
  return BranchAndBound(instance, std::move(edges)).run();
}

double exhaustive_smt(const Instance& instance) {
  guard(instance, candidate_edges(instance).size());
  const auto required = instance.required_points();
  std::vector<PointId> optional;
  for (PointId p = 0; p < instance.num_points(); ++p)
    if (p != instance.root() && !instance.is_terminal(p)) optional.push_back(p);
  double best = kInf;
  const std::uint64_t subsets = std::uint64_t{1} << optional.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    auto points = required;
    for (std::size_t i = 0; i < optional.size(); ++i)
      if ((mask >> i) & 1u) points.push_back(optional[i]);
    best = std::min(best, edge_length(instance, closure_mst(instance, points)));
  }
  return best;
}

std::vector<NodeAggregates> naive_aggregates(const Arborescence& arb, const Instance& instance) {
  const std::size_t n = arb.size();
  // Subtree weights by pushing every terminal's weight up its ancestor chain.
  std::vector<double> weight(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const auto& node = arb.node(v);
    if (node.kind != NodeKind::kTerminal) continue;
    const double w = instance.weight(node.point);
    for (NodeId a = v; a != kNoNode; a = arb.node(a).parent) weight[a] += w;
  }
  std::vector<NodeAggregates> out(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& agg = out[v];
    agg.W = weight[v];
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      const NodeId q = stack.back();
      stack.pop_back();
      const auto& node = arb.node(q);
      if (node.kind == NodeKind::kTerminal)
        agg.D += instance.weight(node.point) * instance.root_distance(node.point);
      if (q != v) {
        const double c = node.parent_cost;
        agg.C += c;
        agg.S1 += weight[q] * (weight[v] - weight[q]) * c;
        agg.S2 += weight[q] * c;
      }
      for (NodeId ch : node.children) stack.push_back(ch);
    }
  }
  return out;
}

std::vector<double> naive_port_costs(const Arborescence& component, const Instance& instance) {
  const std::size_t n = component.size();
  std::vector<std::vector<std::pair<NodeId, double>>> adj(n);
  double connection = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto& node = component.node(v);
    if (node.parent == kNoNode) continue;
    adj[v].emplace_back(node.parent, node.parent_cost);
    adj[node.parent].emplace_back(v, node.parent_cost);
    connection += node.parent_cost;
  }
  std::vector<double> cost(n, 0.0);
  for (NodeId port = 0; port < n; ++port) {
    const double rd = instance.root_distance(component.node(port).point);
    std::vector<double> d(n, -1.0);
    d[port] = 0.0;
    std::vector<NodeId> stack{port};
    double total = rd + connection;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      const auto& node = component.node(u);
      if (node.kind == NodeKind::kTerminal) total += instance.weight(node.point) * (rd + d[u]);
      for (auto [v, c] : adj[u])
        if (d[v] < 0.0) {
          d[v] = d[u] + c;
          stack.push_back(v);
        }
    }
    cost[port] = total;
  }
  return cost;
}

std::vector<bool> naive_split_improved(const Arborescence& arb, const Instance& instance,
                                       double mu) {
  const std::size_t n = arb.size();
  std::vector<bool> removed(n, false);
  auto subtree = [&](NodeId top) {
    std::vector<NodeId> nodes, stack{top};
    while (!stack.empty()) {
      const NodeId q = stack.back();
      stack.pop_back();
      nodes.push_back(q);
      for (NodeId ch : arb.node(q).children)
        if (!removed[ch]) stack.push_back(ch);
    }
    return nodes;
  };
  auto weight_below = [&](NodeId top) {
    double w = 0.0;
    for (NodeId q : subtree(top))
      if (arb.node(q).kind == NodeKind::kTerminal) w += instance.weight(arb.node(q).point);
    return w;
  };
  for (NodeId z : arb.post_order()) {
    if (z == arb.root()) continue;
    const auto nodes = subtree(z);
    const double W = weight_below(z);
    if (!(W > 0.0)) continue;
    double D = 0.0, C = 0.0, spread = 0.0;
    for (NodeId q : nodes) {
      const auto& node = arb.node(q);
      if (node.kind == NodeKind::kTerminal)
        D += instance.weight(node.point) * instance.root_distance(node.point);
      if (q == z) continue;
      const double wq = weight_below(q);
      C += node.parent_cost;
      spread += 2.0 * wq * (W - wq) / W * node.parent_cost;
    }
    const double lhs = spread + D / W;
    const double rhs = mu / 2.0 * (C + arb.node(z).parent_cost) + D / mu;
    if (lhs <= rhs + 1e-12 * (std::abs(lhs) + std::abs(rhs))) removed[z] = true;
  }
  return removed;
}

}  // namespace cdst::oracle
