#include "cdst/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

#include "cdst/errors.hpp"

namespace cdst {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

class CheckLog {
 public:
  void record(const std::string& name, double value, double bound) {
    auto& c = get(name);
    ++c.checked;
    const double margin = value - bound;
    c.worst_margin = std::max(c.worst_margin, margin);
    if (margin > kAuditTolerance * std::max(1.0, std::abs(bound))) ++c.violations;
  }
  std::vector<BoundCheck> take() {
    std::vector<BoundCheck> out;
    for (auto& [_, c] : checks_) out.push_back(c);
    return out;
  }

 private:
  BoundCheck& get(const std::string& name) {
    auto [it, fresh] = checks_.try_emplace(name);
    if (fresh) it->second.name = name;
    return it->second;
  }
  std::map<std::string, BoundCheck> checks_;
};

}  // namespace

std::string to_string(InitMethod m) {
  switch (m) {
    case InitMethod::kMst: return "mst";
    case InitMethod::kExact: return "exact";
    case InitMethod::kGiven: return "given";
  }
  return "?";
}

std::string to_string(SplitterKind s) {
  return s == SplitterKind::kImproved ? "improved" : "baseline";
}

std::string to_string(PortPolicy p) { return p == PortPolicy::kTerminals ? "terminals" : "any"; }

Solution assemble_tree(const Instance& instance, const EdgeList& edges) {
  const std::size_t n = instance.num_points();
  const PointId root = instance.root();
  EdgeList unique;
  unique.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) continue;
    unique.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<std::vector<std::pair<PointId, double>>> adj(n);
  for (auto [u, v] : unique) {
    const double c = instance.distance(u, v);
    adj[u].emplace_back(v, c);
    adj[v].emplace_back(u, c);
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<PointId> parent(n, kNoPoint);
  std::vector<PointId> settled;
  using Item = std::pair<double, PointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[root] = 0.0;
  heap.emplace(0.0, root);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    settled.push_back(u);
    for (auto [v, c] : adj[u]) {
      if (d + c < dist[v]) {
        dist[v] = d + c;
        parent[v] = u;
        heap.emplace(dist[v], v);
      }
    }
  }
  // Keep branches that lead to a terminal.
  std::vector<bool> keep(n, false);
  for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
    const PointId u = *it;
    if (instance.is_terminal(u)) keep[u] = true;
    if (keep[u] && parent[u] != kNoPoint) keep[parent[u]] = true;
  }
  Solution sol;
  for (PointId u : settled)
    if (u != root && keep[u]) sol.edges.emplace_back(parent[u], u);
  sol.costs = evaluate_cost(instance, sol);
  return sol;
}

std::pair<Solution, RunReport> solve_arborescence(const Instance& instance,
                                                  const Arborescence& initial, double mu,
                                                  SplitterKind splitter, PortPolicy ports,
                                                  bool assemble) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be positive and finite");
  RunReport rep;
  rep.splitter = splitter;
  rep.ports = ports;
  rep.mu = mu;
  rep.initial_nodes = initial.size();
  rep.initial_cost = initial.total_cost();
  rep.delay_lb = delay_lower_bound(instance);
  const double C = rep.initial_cost;
  const double D = rep.delay_lb;
  const PointId r = instance.root();
  const bool improved = splitter == SplitterKind::kImproved;
  CheckLog log;

  auto t0 = Clock::now();
  SplitResult split = improved ? split_improved(initial, instance, mu)
                               : split_baseline(initial, instance, mu);
  rep.split_ms = ms_since(t0);
  rep.node_visits = split.node_visits;

  t0 = Clock::now();
  const auto count = static_cast<std::int64_t>(split.cut.size());
  std::vector<PortChoice> choices(split.cut.size());
  std::vector<std::size_t> visits(split.cut.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i)
    choices[i] = select_port(split.cut[i].tree, instance, ports, &visits[i]);
  for (auto v : visits) rep.node_visits += v;

  EdgeList edges;
  rep.components.reserve(split.cut.size());
  for (std::size_t i = 0; i < split.cut.size(); ++i) {
    const auto& comp = split.cut[i];
    const auto& a = comp.aggregates;
    ComponentReport cr;
    cr.W = a.W;
    cr.D = a.D;
    cr.C = a.C;
    cr.S1 = a.S1;
    cr.cut_edge = *comp.cut_edge_cost;
    cr.nodes = comp.tree.size();
    cr.port = choices[i].port;
    cr.cost = choices[i].cost;
    cr.walk_bound = a.C + 2.0 * a.S1 / a.W + (1.0 + 1.0 / a.W) * a.D;
    cr.weight_bound = (1.0 + a.W / 2.0) * a.C + (1.0 + 1.0 / a.W) * a.D;
    cr.mu_bound = (1.0 + mu) * a.C + (1.0 + 1.0 / mu) * a.D;
    cr.cut_bound = (1.0 + mu / 2.0) * (a.C + cr.cut_edge) + (1.0 + 1.0 / mu) * a.D;
    if (ports == PortPolicy::kTerminals) log.record("component.port_le_walk_bound", cr.cost, cr.walk_bound);
    log.record("component.walk_le_weight_bound", cr.walk_bound, cr.weight_bound);
    if (improved) {
      log.record("component.cut_bound", cr.cost, cr.cut_bound);
    } else {
      log.record("component.mu_bound", cr.cost, cr.mu_bound);
    }
    rep.assembled_cost += cr.cost;
    if (cr.port != r) edges.emplace_back(r, cr.port);
    auto inner = comp.tree.point_edges();
    edges.insert(edges.end(), inner.begin(), inner.end());
    rep.components.push_back(cr);
  }

  const auto& rootc = split.root_component;
  rep.root.W = rootc.aggregates.W;
  rep.root.D = rootc.aggregates.D;
  rep.root.C = rootc.aggregates.C;
  if (improved) {
    auto rr = reconnect_root_component(rootc.tree, instance, mu, ports, &rep.node_visits);
    rep.root.reconnected = true;
    rep.root.cost = rr.cost;
    rep.root.root_bound = (1.0 + mu / 2.0) * rep.root.C + (1.0 + 1.0 / mu) * rep.root.D;
    for (const auto& d : rr.children) {
      rep.root.max_child_weight = std::max(rep.root.max_child_weight, d.W);
      log.record("root.child_weight_le_mu", d.W, mu);
      log.record("root.child_bound", d.cost, d.bound);
    }
    log.record("root.component_bound", rr.cost, rep.root.root_bound);
    rep.root.children = std::move(rr.children);
    edges.insert(edges.end(), rr.edges.begin(), rr.edges.end());
  } else {
    // Kept unchanged: exact cost is connection plus weighted depth.
    const auto agg = rootc.aggregates;
    rep.root.cost = agg.C + agg.S2;
    rep.root.root_bound = (1.0 + mu) * agg.C;
    for (NodeId x : initial.node(initial.root()).children)
      if (!split.removed[x])
        rep.root.max_child_weight = std::max(rep.root.max_child_weight, split.aggregates[x].W);
    log.record("baseline.root_bound", rep.root.cost, rep.root.root_bound);
    auto kept = rootc.tree.point_edges();
    edges.insert(edges.end(), kept.begin(), kept.end());
  }
  rep.assembled_cost += rep.root.cost;
  rep.reconnect_ms = ms_since(t0);

  rep.total_bound = improved ? (1.0 + mu / 2.0) * C + (1.0 + 1.0 / mu) * D
                                : (1.0 + mu) * C + (1.0 + 1.0 / mu) * D;
  log.record(improved ? "total.bound" : "baseline.total_bound", rep.assembled_cost,
             rep.total_bound);

  Solution sol;
  if (assemble) {
    t0 = Clock::now();
    sol = assemble_tree(instance, edges);
    rep.assemble_ms = ms_since(t0);
    rep.connection = sol.costs.connection;
    rep.delay = sol.costs.delay;
    rep.total = sol.costs.total;
    log.record("assembly.total_le_assembled", rep.total, rep.assembled_cost);
  } else {
    sol.edges = std::move(edges);
    rep.total = rep.assembled_cost;
  }
  rep.checks = log.take();
  rep.bounds_ok = std::all_of(rep.checks.begin(), rep.checks.end(),
                              [](const BoundCheck& c) { return c.violations == 0; });
  return {std::move(sol), std::move(rep)};
}

std::pair<Solution, RunReport> solve(const Instance& instance, const SolveOptions& options) {
  auto t0 = Clock::now();
  EdgeList tree;
  double beta = 1.0;
  switch (options.init) {
    case InitMethod::kMst:
      tree = mst_steiner(instance);
      beta = 2.0;
      break;
    case InitMethod::kExact:
      tree = exact_steiner(instance);
      break;
    case InitMethod::kGiven:
      if (!options.initial_tree) throw ValidationError("initial tree required for init 'given'");
      tree = *options.initial_tree;
      break;
  }
  const Arborescence initial = binarize(tree, instance);
  const double init_ms = ms_since(t0);
  const double C = initial.total_cost();
  const double D = delay_lower_bound(instance);

  double smt_lower = C;
  if (options.init == InitMethod::kMst) smt_lower = C / 2.0;
  if (options.init == InitMethod::kGiven)
    smt_lower = std::min(C, edge_length(instance, mst_steiner(instance)) / 2.0);

  std::optional<double> mu = options.mu;
  std::string note;
  if (!mu) {
    if (options.splitter == SplitterKind::kBaseline) {
      mu = 1.0 / beta;
      note = "mu = 1/beta";
    } else {
      const auto choice = choose_mu(C, D);
      note = choice.reason;
      if (!choice.keep_initial) mu = choice.mu;
    }
  }

  Solution sol;
  RunReport rep;
  if (mu) {
    std::tie(sol, rep) =
        solve_arborescence(instance, initial, *mu, options.splitter, options.ports);
  } else {
    // Keep the initial tree. Positive-weight terminals can only sit at
    // distance 0 from the root here, so they get a direct zero-length edge.
    auto edges = initial.point_edges();
    for (const auto& t : instance.terminals())
      if (t.weight > 0.0) edges.emplace_back(instance.root(), t.point);
    sol = assemble_tree(instance, edges);
    rep.initial_nodes = initial.size();
    rep.initial_cost = C;
    rep.delay_lb = D;
    rep.kept_initial = true;
    rep.connection = sol.costs.connection;
    rep.delay = sol.costs.delay;
    rep.total = sol.costs.total;
    rep.assembled_cost = rep.total;
    rep.total_bound = C + D + std::sqrt(2.0 * C * D);
    CheckLog log;
    log.record("total.bound", rep.total, rep.total_bound);
    rep.checks = log.take();
    rep.bounds_ok = rep.checks.front().violations == 0;
  }
  rep.init = options.init;
  rep.beta = beta;
  rep.mu_overridden = options.mu.has_value();
  if (!note.empty()) rep.note = note;
  rep.init_ms = init_ms;
  rep.smt_lower = smt_lower;
  rep.lower_bound = lower_bound(instance, smt_lower);
  rep.ratio = rep.lower_bound > 0.0 ? rep.total / rep.lower_bound : 1.0;
  return {std::move(sol), std::move(rep)};
}

}  // namespace cdst
