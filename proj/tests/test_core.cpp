#include "doctest.h"

#include <numbers>

#include "cdst/analysis.hpp"
#include "cdst/errors.hpp"
#include "cdst/instances.hpp"
#include "cdst/io.hpp"
#include "cdst/kernels.hpp"
#include "support.hpp"

using namespace cdst;
using namespace cdst::testing;

namespace {

Instance single_terminal(double dist, double w) {
  MatrixMetric m{{0.0, dist, dist, 0.0}};
  return Instance({"r", "t"}, m, 0, {{1, w}});
}

}  // namespace

TEST_CASE("single edge tree") {
  const auto inst = single_terminal(5.0, 2.0);
  Solution s{{{0, 1}}, {}};
  const auto c = evaluate_cost(inst, s);
  CHECK(c.connection == 5.0);
  CHECK(c.delay == 10.0);
  CHECK(c.total == 15.0);
  CHECK(delay_lower_bound(inst) == 10.0);
}

TEST_CASE("lower bound adds the delay part") {
  const auto inst = unit_instance({0, 0, 0});
  CHECK(delay_lower_bound(inst) == 0.0);
  CHECK(lower_bound(inst, 7.0) == 7.0);
}

TEST_CASE("gap instance: limiting optimum edge set") {
  const int k = 4;
  const double dp = 0.01;
  const auto inst = gen_gap(k, 0.005, dp);
  const auto& g = std::get<GraphMetric>(inst.metric());
  const PointId c = inst.lookup("c");
  // Everything except the first edge of each hub-to-sink path.
  Solution s;
  double dropped = 0.0;
  for (const auto& e : g.edges) {
    if (e.u == c && inst.id(e.v)[0] == 'p') {
      dropped = e.length;
      continue;
    }
    s.edges.emplace_back(e.u, e.v);
  }
  REQUIRE(dropped > 0.0);
  CHECK(dropped <= dp);
  const auto cost = evaluate_cost(inst, s);
  // The spoke edges are (1/sqrt2)/71 long, a bit under delta'.
  CHECK(cost.total == doctest::Approx(analysis::gap_formulas(k, dropped).optimum).epsilon(1e-12));
  CHECK(std::abs(cost.total - 11.61685) <= k * (dp - dropped) + 1e-5);

  CHECK(delay_lower_bound(inst) == doctest::Approx(k / std::numbers::sqrt2));
  CHECK(lower_bound(inst, 2.0 + k / std::numbers::sqrt2) ==
        doctest::Approx(2.0 + std::numbers::sqrt2 * k));
}

TEST_CASE("cost agrees with a per-terminal path walk") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    auto [inst, edges] = random_tree(5 + rep % 40, rng, 0.3);
    const auto a = evaluate_cost(inst, {edges, {}});
    const auto b = path_walk_cost(inst, edges);
    CHECK(close(a.connection, b.connection));
    CHECK(close(a.delay, b.delay));
    CHECK(a.total == a.connection + a.delay);
  }
}

TEST_CASE("structural errors name the vertex") {
  const auto inst = unit_instance({1, 1, 0});  // r, t0, t1, t2
  auto message = [&](EdgeList e) {
    try {
      evaluate_cost(inst, {e, {}});
    } catch (const StructuralError& err) {
      return std::string(err.what());
    }
    return std::string("no error");
  };
  CHECK(message({{0, 1}, {1, 2}, {2, 0}, {0, 3}}).find("cycle") != std::string::npos);
  CHECK(message({{0, 1}, {0, 2}}).find("'t2'") != std::string::npos);
  CHECK(message({{0, 1}, {0, 2}, {3, 3}}).find("self-loop at 't2'") != std::string::npos);
  CHECK(message({{0, 1}, {0, 2}, {0, 3}}) == "no error");
}

TEST_CASE("instance validation") {
  MatrixMetric good{{0, 1, 1, 0}};
  CHECK_THROWS_AS(Instance({"r", "t"}, good, 0, {{1, -1.0}}), ValidationError);
  CHECK_THROWS_AS(Instance({"r", "t"}, good, 0, {{0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Instance({"r", "t"}, good, 0, {{1, 1.0}, {1, 2.0}}), ValidationError);
  CHECK_THROWS_AS(Instance({"r", "t"}, good, 0, {{1, std::nan("")}}), ValidationError);
  CHECK_THROWS_AS(Instance({"r", "r"}, good, 0, {{1, 1.0}}), ValidationError);

  // 0-1-2 with c(0,2) = 3 > 1 + 1.
  MatrixMetric bad{{0, 1, 3, 1, 0, 1, 3, 1, 0}};
  CHECK_THROWS_AS(Instance({"a", "b", "c"}, bad, 0, {{1, 1.0}}), ValidationError);
  MatrixMetric asym{{0, 1, 2, 0}};
  CHECK_THROWS_AS(Instance({"a", "b"}, asym, 0, {{1, 1.0}}), ValidationError);

  GraphMetric split{{{0, 1, 1.0}, {2, 3, 1.0}}};
  CHECK_THROWS_AS(Instance({"a", "b", "c", "d"}, split, 0, {{1, 1.0}}), ValidationError);
}

TEST_CASE("graph metric is the shortest-path closure") {
  GraphMetric g{{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 5.0}}};
  const Instance inst({"a", "b", "c"}, g, 0, {{2, 1.0}});
  CHECK(inst.distance(0, 2) == 2.0);
  CHECK(inst.root_distance(2) == 2.0);
  CHECK(inst.distance(2, 0) == 2.0);
}

TEST_CASE("parallel kernels match their serial references") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const auto inst = random_graph(30 + rep, 10, 40, rng);
    const auto& g = std::get<GraphMetric>(inst.metric());
    const auto adj = kernels::build_adjacency(inst.num_points(), g.edges);
    const auto fast = kernels::all_pairs(adj);
    const auto ref = kernels::all_pairs_serial(adj);
    REQUIRE(fast.size() == ref.size());
    for (std::size_t i = 0; i < fast.size(); ++i) REQUIRE(close(fast[i], ref[i], 1e-12));
    CHECK(kernels::triangle_violation(fast, inst.num_points()) ==
          kernels::triangle_violation_serial(fast, inst.num_points()));
    CHECK(kernels::triangle_violation(fast, inst.num_points()) <= 1e-9);
  }
  std::vector<double> broken{0, 1, 5, 1, 0, 1, 5, 1, 0};
  CHECK(kernels::triangle_violation(broken, 3) == doctest::Approx(3.0));
  CHECK(kernels::triangle_violation_serial(broken, 3) == doctest::Approx(3.0));
}

TEST_CASE("json round trip") {
  for (auto family : {RandomFamily::kEuclidean2d, RandomFamily::kRandomGraph}) {
    const auto inst = gen_random(9, 3, family);
    const auto doc = io::instance_to_json(inst);
    const auto back = io::parse_instance(doc);
    CHECK(io::instance_to_json(back).dump() == doc.dump());
    REQUIRE(back.num_points() == inst.num_points());
    for (PointId a = 0; a < inst.num_points(); ++a)
      for (PointId b = 0; b < inst.num_points(); ++b)
        REQUIRE(back.distance(a, b) == inst.distance(a, b));
  }
  const auto inst = six_point_instance();
  CHECK(io::parse_instance(io::instance_to_json(inst)).weight(6) == 1.0);

  Solution s{six_point_initial(), {}};
  s.costs = evaluate_cost(inst, s);
  const auto doc = io::solution_to_json(inst, s);
  CHECK(doc["edges"][0] == nlohmann::json::array({"r", "t5"}));
  const auto back = io::parse_solution(doc, inst);
  CHECK(back.edges == s.edges);
  CHECK(back.costs.total == s.costs.total);
}

TEST_CASE("parse errors carry a JSON pointer") {
  auto doc = io::instance_to_json(six_point_instance());
  auto pointer = [](const nlohmann::json& d) {
    try {
      io::parse_instance(d);
    } catch (const ParseError& e) {
      return e.pointer();
    }
    return std::string("no error");
  };
  CHECK(pointer(doc) == "no error");

  auto bad = doc;
  bad["metric"]["type"] = "hyperbolic";
  CHECK(pointer(bad) == "/metric/type");
  bad = doc;
  bad["terminals"][2]["weight"] = "NaN";
  CHECK(pointer(bad) == "/terminals/2/weight");
  bad = doc;
  bad["terminals"][0]["weight"] = std::nan("");
  CHECK(pointer(bad) == "/terminals/0/weight");
  bad = doc;
  bad["terminals"][1]["id"] = "nowhere";
  CHECK(pointer(bad) == "/terminals/1/id");
  bad = doc;
  bad["metric"]["distances"][1].erase(0);
  CHECK(pointer(bad) == "/metric/distances/1");
  bad = doc;
  bad.erase("root");
  CHECK(pointer(bad) == "/root");

  CHECK_THROWS_AS(io::parse_instance(nlohmann::json::parse(R"({"metric": {"type": "graph"},
      "vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "length": -1}],
      "root": "a", "terminals": []})")),
                  ParseError);
}
