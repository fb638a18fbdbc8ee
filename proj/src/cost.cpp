#include <limits>

#include "cdst/errors.hpp"
#include "cdst/solution.hpp"

namespace cdst {

CostBreakdown evaluate_cost(const Instance& instance, const Solution& solution) {
  const std::size_t n = instance.num_points();
  const PointId root = instance.root();

  std::vector<std::vector<std::pair<PointId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < solution.edges.size(); ++i) {
    const auto [u, v] = solution.edges[i];
    if (u >= n || v >= n) throw StructuralError("edge endpoint out of range");
    if (u == v) throw StructuralError("self-loop at '" + instance.id(u) + "'");
    adj[u].emplace_back(v, i);
    adj[v].emplace_back(u, i);
  }

  constexpr double kUnseen = -1.0;
  std::vector<double> depth(n, kUnseen);
  std::vector<std::size_t> via(n, std::numeric_limits<std::size_t>::max());
  std::vector<PointId> stack{root};
  depth[root] = 0.0;
  CostBreakdown out;
  while (!stack.empty()) {
    const PointId u = stack.back();
    stack.pop_back();
    for (const auto& [v, edge] : adj[u]) {
      if (edge == via[u]) continue;
      if (depth[v] != kUnseen) throw StructuralError("cycle through '" + instance.id(v) + "'");
      const double c = instance.distance(u, v);
      depth[v] = depth[u] + c;
      via[v] = edge;
      out.connection += c;
      stack.push_back(v);
    }
  }
  for (PointId p = 0; p < n; ++p) {
    if (!adj[p].empty() && depth[p] == kUnseen)
      throw StructuralError("vertex '" + instance.id(p) + "' is not connected to the root");
  }
  for (const auto& t : instance.terminals()) {
    if (depth[t.point] == kUnseen)
      throw StructuralError("terminal '" + instance.id(t.point) + "' unreachable from root");
    out.delay += t.weight * depth[t.point];
  }
  out.total = out.connection + out.delay;
  return out;
}

double delay_lower_bound(const Instance& instance) {
  double d = 0.0;
  for (const auto& t : instance.terminals()) d += t.weight * instance.root_distance(t.point);
  return d;
}

double lower_bound(const Instance& instance, double smt_cost) {
  return smt_cost + delay_lower_bound(instance);
}

double edge_length(const Instance& instance,
                   const std::vector<std::pair<PointId, PointId>>& edges) {
  double c = 0.0;
  for (const auto& [u, v] : edges) c += instance.distance(u, v);
  return c;
}

}  // namespace cdst
