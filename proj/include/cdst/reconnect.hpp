#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cdst/arborescence.hpp"
#include "cdst/instance.hpp"
#include "cdst/steiner_init.hpp"

namespace cdst {

enum class PortPolicy { kTerminals, kAny };

/// cost_v = c(r,v) + C + sum_t w(t) * (c(r,v) + d_A(v,t)) for every node v
/// of `component`: the cost of serving its terminals through a direct
/// root edge to v. Linear time; `visits` (optional) counts node touches.
std::vector<double> port_costs(const Arborescence& component, const Instance& instance,
                               std::size_t* visits = nullptr);

struct PortChoice {
  NodeId node = kNoNode;
  PointId port = kNoPoint;
  double cost = 0.0;
};

/// Cheapest port; ties go to the smaller point index, then node index.
/// Throws StructuralError if no candidate exists.
PortChoice select_port(const Arborescence& component, const Instance& instance,
                       PortPolicy policy = PortPolicy::kTerminals,
                       std::size_t* visits = nullptr);

struct RootChildDecision {
  PointId child = kNoPoint;
  double W = 0.0;
  double D = 0.0;
  double C = 0.0;           // cost inside the child subtree
  double edge = 0.0;        // c(r, child)
  double keep_cost = 0.0;   // exact cost when the root edge is kept
  double port_cost = 0.0;   // cost through the best port (if any)
  PointId port = kNoPoint;  // set when rewired
  bool rewired = false;
  bool empty = false;       // no terminals below: dropped
  double cost = 0.0;
  double bound = 0.0;       // (1+mu/2)(C + edge) + (1+1/mu) D
};

struct RootReconnect {
  EdgeList edges;
  double cost = 0.0;
  double bound = 0.0;
  std::vector<RootChildDecision> children;
};

/// Handles the root component one root child at a time: keep the root edge
/// or cut it and re-attach the child subtree through its best port,
/// whichever is cheaper. Requires every child subtree weight <= mu
/// (InvariantError otherwise).
RootReconnect reconnect_root_component(const Arborescence& root_component,
                                       const Instance& instance, double mu,
                                       PortPolicy policy = PortPolicy::kTerminals,
                                       std::size_t* visits = nullptr);

struct MuChoice {
  bool keep_initial = false;
  double mu = 0.0;
  std::string reason;
};

/// mu = sqrt(2D/C). C == 0 or D == 0 means the initial tree is kept.
MuChoice choose_mu(double C, double D);

}  // namespace cdst
