#include "doctest.h"

#include "cdst/errors.hpp"
#include "cdst/oracle.hpp"
#include "cdst/solve.hpp"
#include "support.hpp"

using namespace cdst;
using namespace cdst::testing;

namespace {

std::size_t violations(const RunReport& rep) {
  std::size_t v = 0;
  for (const auto& c : rep.checks) v += c.violations;
  return v;
}

}  // namespace

TEST_CASE("single terminal port") {
  const auto inst = euclid_instance({{0, 0}, {3, 4}}, {{1, 0.5}});
  Arborescence comp;
  comp.add_node(1, NodeKind::kTerminal);
  const auto cost = port_costs(comp, inst);
  CHECK(cost[0] == doctest::Approx(5.0 * 1.5));
  const auto pick = select_port(comp, inst);
  CHECK(pick.port == 1);
  CHECK(oracle::naive_port_costs(comp, inst)[0] == doctest::Approx(7.5));
}

TEST_CASE("two-terminal path prefers the heavy end") {
  // r is at distance 1 from both terminals, which are 1 apart.
  MatrixMetric m{{0, 1, 1, 1, 0, 1, 1, 1, 0}};
  const Instance inst({"r", "a", "b"}, m, 0, {{1, 1.0}, {2, 0.0}});
  Arborescence comp;
  const auto s = comp.add_node(1, NodeKind::kSteiner);
  comp.add_node(1, NodeKind::kTerminal, s, 0.0);
  comp.add_node(2, NodeKind::kTerminal, s, 1.0);
  const auto pick = select_port(comp, inst);
  CHECK(inst.id(pick.port) == "a");
  CHECK(pick.cost == 3.0);
  const auto cost = port_costs(comp, inst);
  CHECK(cost[2] == 4.0);

  // Letting Steiner copies be ports changes nothing here (same point).
  CHECK(select_port(comp, inst, PortPolicy::kAny).cost == 3.0);
}

TEST_CASE("component without terminals has no port") {
  const auto inst = six_point_instance();
  Arborescence comp;
  comp.add_node(2, NodeKind::kSteiner);
  CHECK_THROWS_AS(select_port(comp, inst), StructuralError);
  CHECK(select_port(comp, inst, PortPolicy::kAny).port == 2);
}

TEST_CASE("propagated port costs match per-node walks") {
  std::mt19937_64 rng(60);
  for (int rep = 0; rep < 100; ++rep) {
    auto [inst, edges] = random_tree(2 + rep % 50, rng, 0.3);
    const auto arb = binarize(edges, inst);
    // Every subtree below a root child is a plausible component.
    for (NodeId x : arb.node(arb.root()).children) {
      const auto comp = arb.extract(x, [](NodeId) { return false; });
      const auto fast = port_costs(comp, inst);
      const auto slow = oracle::naive_port_costs(comp, inst);
      for (NodeId v = 0; v < comp.size(); ++v) CHECK(close(fast[v], slow[v]));
    }
  }
}

TEST_CASE("choose mu") {
  CHECK(choose_mu(2.0, 1.0).mu == 1.0);
  CHECK(choose_mu(8.0, 1.0).mu == 0.5);
  CHECK_FALSE(choose_mu(2.0, 1.0).keep_initial);
  CHECK(choose_mu(0.0, 3.0).keep_initial);
  CHECK(choose_mu(0.0, 3.0).reason.find("optimal") != std::string::npos);
  CHECK(choose_mu(5.0, 0.0).keep_initial);
  CHECK_THROWS_AS(choose_mu(-1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(choose_mu(1.0, std::nan("")), ValidationError);
}

TEST_CASE("mu is unchanged by scaling all distances") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    auto [inst, edges] = random_tree(30, rng, 0.3);
    auto m = std::get<EuclideanMetric>(inst.metric());
    for (auto& x : m.coords) x *= 4.0;
    const Instance scaled(names(inst.num_points()), m, 0, inst.terminals());
    const auto a = solve(inst, {}).second;
    const auto b = solve(scaled, {}).second;
    CHECK(a.mu == b.mu);
  }
}

TEST_CASE("root component: zero-weight child keeps its edge") {
  const auto inst = euclid_instance({{0, 0}, {1, 0}, {2, 0}}, {{1, 0.0}, {2, 0.0}});
  Arborescence comp;
  const auto r = comp.add_node(0, NodeKind::kRoot);
  const auto s = comp.add_node(1, NodeKind::kSteiner, r, 1.0);
  comp.add_node(1, NodeKind::kTerminal, s, 0.0);
  comp.add_node(2, NodeKind::kTerminal, s, 1.0);
  const auto out = reconnect_root_component(comp, inst, 1.0);
  REQUIRE(out.children.size() == 1);
  CHECK_FALSE(out.children[0].rewired);
  CHECK(out.cost == 2.0);
}

TEST_CASE("root component: detour child is rewired") {
  // Root child sits far out; its only weighted terminal is next to the root.
  const auto inst = euclid_instance({{0, 0}, {5, 0}, {0, 0.01}, {0, 0.02}},
                                    {{2, 1.0}, {3, 0.0}});
  Arborescence comp;
  const auto r = comp.add_node(0, NodeKind::kRoot);
  const auto s = comp.add_node(1, NodeKind::kSteiner, r, inst.distance(0, 1));
  comp.add_node(2, NodeKind::kTerminal, s, inst.distance(1, 2));
  comp.add_node(3, NodeKind::kTerminal, s, inst.distance(1, 3));
  const double mu = 1.0;
  const auto out = reconnect_root_component(comp, inst, mu);
  REQUIRE(out.children.size() == 1);
  const auto& d = out.children[0];
  CHECK(d.W == mu);
  CHECK(d.rewired);
  CHECK(inst.id(d.port) == "v2");
  CHECK(d.port_cost < d.keep_cost);
  CHECK(out.cost <= (1 + mu / 2) * (d.C + d.edge) + (1 + 1 / mu) * d.D);
  // Too small a mu breaks the precondition.
  CHECK_THROWS_AS(reconnect_root_component(comp, inst, 0.5), InvariantError);
}

TEST_CASE("six-point example end to end") {
  const auto inst = six_point_instance();
  SolveOptions opt;
  opt.init = InitMethod::kGiven;
  opt.initial_tree = six_point_initial();
  opt.mu = 1.0;
  const auto [imp_sol, imp] = solve(inst, opt);
  CHECK(imp.total == 8.0);
  CHECK(imp_sol.costs.total == 8.0);
  CHECK(imp.bounds_ok);
  CHECK(imp.components.size() == 2);

  opt.splitter = SplitterKind::kBaseline;
  const auto [base_sol, base] = solve(inst, opt);
  CHECK(base.total == 13.0);
  CHECK(base.bounds_ok);
  REQUIRE(base.components.size() == 1);
  CHECK(base.components[0].cost == 13.0);
}

TEST_CASE("zero-length initial tree is kept") {
  const auto inst = euclid_instance({{1, 1}, {1, 1}, {1, 1}}, {{1, 2.0}, {2, 0.0}});
  const auto [sol, rep] = solve(inst, {});
  CHECK(rep.kept_initial);
  CHECK(rep.note.find("optimal") != std::string::npos);
  CHECK(rep.total == 0.0);
  CHECK(rep.bounds_ok);
}

TEST_CASE("zero delay bound keeps the initial tree") {
  const auto inst = euclid_instance({{0, 0}, {1, 0}, {2, 0}, {2, 1}}, {{2, 0.0}, {3, 0.0}});
  const auto [sol, rep] = solve(inst, {});
  CHECK(rep.kept_initial);
  CHECK(rep.total == doctest::Approx(edge_length(inst, mst_steiner(inst))));
}

TEST_CASE("baseline mu defaults to 1/beta") {
  const auto inst = six_point_instance();
  SolveOptions opt;
  opt.splitter = SplitterKind::kBaseline;
  CHECK(solve(inst, opt).second.mu == 0.5);
  opt.init = InitMethod::kExact;
  CHECK(solve(inst, opt).second.mu == 1.0);
  opt.mu = 0.25;
  const auto rep = solve(inst, opt).second;
  CHECK(rep.mu == 0.25);
  CHECK(rep.mu_overridden);
}

TEST_CASE("solve: structure, bounds and reported costs") {
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 60; ++rep) {
    const auto inst = random_graph(9 + rep % 20, 3 + rep % 9, 10, rng);
    for (auto init : {InitMethod::kMst, InitMethod::kExact})
      for (auto split : {SplitterKind::kImproved, SplitterKind::kBaseline})
        for (auto ports : {PortPolicy::kTerminals, PortPolicy::kAny}) {
          SolveOptions opt;
          opt.init = init;
          opt.splitter = split;
          opt.ports = ports;
          const auto [sol, r] = solve(inst, opt);
          CHECK(violations(r) == 0);
          CHECK(r.bounds_ok);
          const auto c = evaluate_cost(inst, sol);
          CHECK(close(c.total, r.total));
          CHECK(r.total <= r.assembled_cost + 1e-9);
          if (!r.kept_initial) CHECK(r.total <= r.total_bound * (1 + 1e-9));
        }
  }
}

TEST_CASE("solve stays within the approximation factors") {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = random_graph(10, 1 + rep % 8, 8, rng);
    const double lb = lower_bound(inst, oracle::exhaustive_smt(inst));
    SolveOptions opt;
    opt.init = InitMethod::kExact;
    CHECK(solve(inst, opt).second.total <= 1.70711 * lb);
    opt.init = InitMethod::kMst;
    CHECK(solve(inst, opt).second.total <= 2.61804 * lb);
  }
}

TEST_CASE("assembly never costs more than its parts") {
  const auto inst = six_point_instance();
  // Duplicate edges and a dangling Steiner branch.
  const EdgeList messy{{0, 1}, {1, 0}, {0, 6}, {6, 5}, {5, 4}, {4, 3}, {3, 2}, {0, 2}};
  const auto sol = assemble_tree(inst, messy);
  CHECK(sol.costs.total <= path_walk_cost(inst, {{0, 1}, {0, 6}, {0, 2}, {2, 3}, {3, 4}, {4, 5}})
                               .total);
  CHECK(evaluate_cost(inst, sol).total == sol.costs.total);
}

TEST_CASE("solve is deterministic") {
  std::mt19937_64 rng(64);
  const auto inst = random_graph(40, 20, 40, rng);
  const auto a = solve(inst, {});
  const auto b = solve(inst, {});
  CHECK(a.first.edges == b.first.edges);
  CHECK(a.second.total == b.second.total);
}
