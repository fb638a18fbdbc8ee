#pragma once

#include <cstdint>
#include <string>

#include "cdst/arborescence.hpp"
#include "cdst/instance.hpp"

namespace cdst {

enum class RandomFamily { kEuclidean2d, kRandomGraph, kStarHeavy };

RandomFamily parse_family(const std::string& name);
std::string to_string(RandomFamily family);

/// Graph instance whose optimum exceeds the lower bound by a factor tending
/// to 1 + 1/sqrt(2) as k grows and the subdivisions get finer. Hub "c" is
/// joined to the root "r" by a path of length 2 cut into edges of length at
/// most delta, and to every sink "t<i>" (weight 1/sqrt(2)) by a path of
/// length 1/sqrt(2) cut into edges of length at most delta_prime. Each sink
/// also has a unit edge to the root. All vertices except the root are
/// terminals; path vertices "p<path>_<index>" have weight 0. Each path uses
/// ceil(length/limit) equal edges, so finite instances deviate from the
/// limiting optimum by less than k * delta_prime.
/// Requires k >= 1 and 0 < delta < delta_prime < 1/k.
Instance gen_gap(int k, double delta, double delta_prime);

/// Deterministic random instance with n terminals. Weights mix exact zeros
/// with positive values.
///   euclidean2d  root and terminals uniform in a 100 x 100 square
///   random-graph root, n terminals and n/2 Steiner vertices; random spanning
///                tree plus extra edges, lengths in [1, 10]
///   star-heavy   terminals on arcs around the root, light in the middle of
///                each arc and heavier at the ends
Instance gen_random(int n_terminals, std::uint64_t seed, RandomFamily family);

struct ScalingCase {
  Instance instance;
  Arborescence tree;
};

/// n terminals uniform in the unit square, root at the centre, and a
/// balanced binary arborescence built by median splits on alternating axes
/// (a kd-tree). Each Steiner node sits on the median terminal of its cell.
/// Already in the shape the splitters expect; used for scaling runs.
ScalingCase gen_scaling_tree(std::size_t n_terminals, std::uint64_t seed);

}  // namespace cdst
