#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdst/reconnect.hpp"
#include "cdst/solution.hpp"
#include "cdst/splitter.hpp"
#include "cdst/steiner_init.hpp"

namespace cdst {

enum class InitMethod { kMst, kExact, kGiven };
enum class SplitterKind { kImproved, kBaseline };

struct SolveOptions {
  InitMethod init = InitMethod::kMst;
  SplitterKind splitter = SplitterKind::kImproved;
  PortPolicy ports = PortPolicy::kTerminals;
  std::optional<double> mu;            // overrides the automatic choice
  std::optional<EdgeList> initial_tree;  // required for InitMethod::kGiven
};

/// One family of inequality checks, e.g. every cut component's reconnection
/// bound. `worst_margin` is max(value - bound) over the family.
struct BoundCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
};

struct ComponentReport {
  double W = 0.0, D = 0.0, C = 0.0, S1 = 0.0;
  double cut_edge = 0.0;
  std::size_t nodes = 0;
  PointId port = kNoPoint;
  double cost = 0.0;
  double walk_bound = 0.0;  // C + 2 S1/W + (1 + 1/W) D
  double weight_bound = 0.0;  // (1 + W/2) C + (1 + 1/W) D
  double mu_bound = 0.0;  // (1 + mu) C + (1 + 1/mu) D
  double cut_bound = 0.0;  // (1 + mu/2)(C + cut_edge) + (1 + 1/mu) D
};

struct RootReport {
  double W = 0.0, D = 0.0, C = 0.0;
  double cost = 0.0;
  double root_bound = 0.0;
  double max_child_weight = 0.0;
  bool reconnected = false;  // false for the baseline, which keeps it as is
  std::vector<RootChildDecision> children;
};

struct RunReport {
  InitMethod init = InitMethod::kMst;
  SplitterKind splitter = SplitterKind::kImproved;
  PortPolicy ports = PortPolicy::kTerminals;
  double beta = 2.0;

  double initial_cost = 0.0;  // C: length of the initial tree
  double delay_lb = 0.0;      // D
  double mu = 0.0;
  bool mu_overridden = false;
  bool kept_initial = false;
  std::string note;

  std::vector<ComponentReport> components;
  RootReport root;

  double assembled_cost = 0.0;  // sum of component and root costs
  double connection = 0.0;
  double delay = 0.0;
  double total = 0.0;
  double smt_lower = 0.0;  // admissible lower bound on C_SMT
  double lower_bound = 0.0;
  double ratio = 0.0;
  double total_bound = 0.0;

  std::vector<BoundCheck> checks;
  bool bounds_ok = true;

  std::size_t initial_nodes = 0;
  std::size_t node_visits = 0;  // split + reconnect
  double init_ms = 0.0, split_ms = 0.0, reconnect_ms = 0.0, assemble_ms = 0.0;
};

/// Full pipeline: initial tree, binarize, choose mu, split, reconnect every
/// cut component through its best port, re-wire the root component, and
/// merge everything into one tree. Every proved bound is re-checked and
/// recorded in the report.
std::pair<Solution, RunReport> solve(const Instance& instance, const SolveOptions& options);

/// Split and reconnect an already binarized initial arborescence with a
/// fixed mu. Used by solve and by the scaling benchmark.
std::pair<Solution, RunReport> solve_arborescence(const Instance& instance,
                                                  const Arborescence& initial, double mu,
                                                  SplitterKind splitter, PortPolicy ports,
                                                  bool assemble = true);

/// Union of point-level edges reduced to a tree: shortest-path tree from the
/// root inside the union, trimmed to branches that reach a terminal. Never
/// longer and never slower for any terminal than the union itself.
Solution assemble_tree(const Instance& instance, const EdgeList& edges);

std::string to_string(InitMethod m);
std::string to_string(SplitterKind s);
std::string to_string(PortPolicy p);

}  // namespace cdst
