#include "cdst/reconnect.hpp"

#include <cmath>

#include "cdst/errors.hpp"

namespace cdst {

namespace {

struct SubtreeSums {
  std::vector<double> weight;  // per node
  double total_weight = 0.0;
  double connection = 0.0;
  double weighted_depth = 0.0;  // S2 at the component root
  double min_delay = 0.0;       // D
  bool has_terminal = false;
};

SubtreeSums subtree_sums(const Arborescence& comp, const Instance& instance,
                         std::size_t* visits) {
  SubtreeSums s;
  s.weight.assign(comp.size(), 0.0);
  for (NodeId v : comp.post_order()) {
    const auto& node = comp.node(v);
    if (node.kind == NodeKind::kTerminal) {
      const double w = instance.weight(node.point);
      s.weight[v] += w;
      s.min_delay += w * instance.root_distance(node.point);
      s.has_terminal = true;
    }
    if (v != comp.root()) {
      s.weight[node.parent] += s.weight[v];
      s.connection += node.parent_cost;
      s.weighted_depth += s.weight[v] * node.parent_cost;
    }
    if (visits) ++*visits;
  }
  s.total_weight = comp.empty() ? 0.0 : s.weight[comp.root()];
  return s;
}

std::vector<double> port_costs_from(const Arborescence& comp, const Instance& instance,
                                    const SubtreeSums& s, std::size_t* visits) {
  std::vector<double> cost(comp.size(), 0.0);
  if (comp.empty()) return cost;
  const double W = s.total_weight;
  const NodeId top = comp.root();
  const double rd_top = instance.root_distance(comp.node(top).point);
  cost[top] = rd_top * (1.0 + W) + s.connection + s.weighted_depth;
  for (NodeId x : comp.pre_order()) {
    const double rd_x = instance.root_distance(comp.node(x).point);
    for (NodeId y : comp.node(x).children) {
      const double rd_y = instance.root_distance(comp.node(y).point);
      const double e = comp.node(y).parent_cost;
      const double wy = s.weight[y];
      cost[y] = cost[x] - ((rd_x - rd_y) * (1.0 + W) + e * wy - e * (W - wy));
    }
    if (visits) ++*visits;
  }
  return cost;
}

PortChoice pick(const Arborescence& comp, const std::vector<double>& cost, PortPolicy policy) {
  PortChoice best;
  for (NodeId v = 0; v < comp.size(); ++v) {
    const auto& node = comp.node(v);
    if (policy == PortPolicy::kTerminals && node.kind != NodeKind::kTerminal) continue;
    const bool better = best.node == kNoNode || cost[v] < best.cost ||
                        (cost[v] == best.cost && node.point < best.port);
    if (better) best = {v, node.point, cost[v]};
  }
  if (best.node == kNoNode) throw StructuralError("component has no port candidate");
  return best;
}

}  // namespace

std::vector<double> port_costs(const Arborescence& component, const Instance& instance,
                               std::size_t* visits) {
  const auto sums = subtree_sums(component, instance, visits);
  return port_costs_from(component, instance, sums, visits);
}

PortChoice select_port(const Arborescence& component, const Instance& instance,
                       PortPolicy policy, std::size_t* visits) {
  return pick(component, port_costs(component, instance, visits), policy);
}

RootReconnect reconnect_root_component(const Arborescence& root_component,
                                       const Instance& instance, double mu, PortPolicy policy,
                                       std::size_t* visits) {
  RootReconnect out;
  const auto& top = root_component.node(root_component.root());
  const PointId r = top.point;
  for (NodeId x : top.children) {
    const Arborescence sub = root_component.extract(x, [](NodeId) { return false; });
    const auto sums = subtree_sums(sub, instance, visits);

    RootChildDecision d;
    d.child = root_component.node(x).point;
    d.W = sums.total_weight;
    d.D = sums.min_delay;
    d.C = sums.connection;
    d.edge = root_component.node(x).parent_cost;
    d.bound = (1.0 + mu / 2.0) * (d.C + d.edge) + (1.0 + 1.0 / mu) * d.D;
    if (d.W > mu * (1.0 + kAuditTolerance))
      throw InvariantError("root child '" + instance.id(d.child) + "' has weight " +
                           std::to_string(d.W) + " > mu = " + std::to_string(mu));

    auto sub_edges = sub.point_edges();
    if (!sums.has_terminal) {
      d.empty = true;
    } else {
      d.keep_cost = (1.0 + d.W) * d.edge + d.C + sums.weighted_depth;
      d.cost = d.keep_cost;
      if (d.W > 0.0) {
        const auto choice = pick(sub, port_costs_from(sub, instance, sums, visits), policy);
        d.port_cost = choice.cost;
        if (choice.cost < d.keep_cost) {
          d.rewired = true;
          d.port = choice.port;
          d.cost = choice.cost;
        }
      }
      const PointId attach = d.rewired ? d.port : d.child;
      if (attach != r) out.edges.emplace_back(r, attach);
      out.edges.insert(out.edges.end(), sub_edges.begin(), sub_edges.end());
    }
    out.cost += d.cost;
    out.bound += d.bound;
    out.children.push_back(d);
  }
  return out;
}

MuChoice choose_mu(double C, double D) {
  if (!(std::isfinite(C) && std::isfinite(D)) || C < 0.0 || D < 0.0)
    throw ValidationError("choose_mu needs finite nonnegative C and D");
  if (C == 0.0) return {true, 0.0, "initial tree has zero length and is optimal"};
  if (D == 0.0) return {true, 0.0, "zero delay lower bound; initial tree kept"};
  return {false, std::sqrt(2.0 * D / C), "mu = sqrt(2D/C)"};
}

}  // namespace cdst
