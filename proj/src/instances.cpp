#include "cdst/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cdst/errors.hpp"

namespace cdst {

RandomFamily parse_family(const std::string& name) {
  if (name == "euclidean2d") return RandomFamily::kEuclidean2d;
  if (name == "random-graph") return RandomFamily::kRandomGraph;
  if (name == "star-heavy") return RandomFamily::kStarHeavy;
  throw ValidationError("unknown family '" + name + "'");
}

std::string to_string(RandomFamily family) {
  switch (family) {
    case RandomFamily::kEuclidean2d: return "euclidean2d";
    case RandomFamily::kRandomGraph: return "random-graph";
    case RandomFamily::kStarHeavy: return "star-heavy";
  }
  return "?";
}

Instance gen_gap(int k, double delta, double delta_prime) {
  if (k < 1) throw ValidationError("gap instance needs k >= 1");
  if (!(delta > 0.0 && delta < delta_prime && delta_prime < 1.0 / k))
    throw ValidationError("gap instance needs 0 < delta < delta' < 1/k");

  std::vector<std::string> ids{"r", "c"};
  for (int i = 1; i <= k; ++i) ids.push_back("t" + std::to_string(i));
  std::vector<GraphEdge> edges;
  const PointId r = 0, c = 1;

  auto add_path = [&](int path, PointId from, PointId to, double length, double limit) {
    const auto pieces = static_cast<int>(std::ceil(length / limit - 1e-9));
    const double step = length / pieces;
    double laid = 0.0;
    PointId prev = from;
    for (int i = 1; i <= pieces; ++i) {
      PointId next = to;
      if (i < pieces) {
        next = static_cast<PointId>(ids.size());
        ids.push_back("p" + std::to_string(path) + "_" + std::to_string(i));
      }
      // The last piece absorbs rounding so the path sums to `length`.
      const double piece = i < pieces ? step : length - laid;
      edges.push_back({prev, next, piece});
      laid += piece;
      prev = next;
    }
  };

  add_path(0, r, c, 2.0, delta);
  const double spoke = 1.0 / std::numbers::sqrt2;
  for (int i = 1; i <= k; ++i) add_path(i, c, static_cast<PointId>(1 + i), spoke, delta_prime);
  for (int i = 1; i <= k; ++i) edges.push_back({r, static_cast<PointId>(1 + i), 1.0});

  std::vector<Terminal> terminals;
  for (PointId p = 1; p < ids.size(); ++p) {
    const bool sink = p >= 2 && p < static_cast<PointId>(2 + k);
    terminals.push_back({p, sink ? spoke : 0.0});
  }
  return Instance(std::move(ids), GraphMetric{std::move(edges)}, r, std::move(terminals));
}

namespace {

double draw_weight(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.3) return 0.0;
  return std::exp(std::uniform_real_distribution<double>(-3.0, 0.5)(rng));
}

Instance euclidean_square(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  std::vector<std::string> ids{"r"};
  EuclideanMetric metric{2, {}};
  metric.coords = {pos(rng), pos(rng)};
  std::vector<Terminal> terminals;
  for (int i = 1; i <= n; ++i) {
    ids.push_back("t" + std::to_string(i));
    metric.coords.push_back(pos(rng));
    metric.coords.push_back(pos(rng));
    terminals.push_back({static_cast<PointId>(i), draw_weight(rng)});
  }
  return Instance(std::move(ids), std::move(metric), 0, std::move(terminals));
}

Instance random_graph(int n, std::mt19937_64& rng) {
  const int steiner = std::max(1, n / 2);
  const int total = 1 + n + steiner;
  std::vector<std::string> ids{"r"};
  for (int i = 1; i <= n; ++i) ids.push_back("t" + std::to_string(i));
  for (int i = 1; i <= steiner; ++i) ids.push_back("s" + std::to_string(i));

  std::uniform_real_distribution<double> len(1.0, 10.0);
  std::vector<PointId> order(total);
  for (int i = 0; i < total; ++i) order[i] = static_cast<PointId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<GraphEdge> edges;
  for (int i = 1; i < total; ++i) {
    std::uniform_int_distribution<int> earlier(0, i - 1);
    edges.push_back({order[earlier(rng)], order[i], len(rng)});
  }
  std::uniform_int_distribution<int> any(0, total - 1);
  const int extra = total / 2 + 1;
  for (int added = 0, tries = 0; added < extra && tries < 50 * extra; ++tries) {
    const auto u = static_cast<PointId>(any(rng));
    const auto v = static_cast<PointId>(any(rng));
    if (u == v) continue;
    const bool dup = std::any_of(edges.begin(), edges.end(), [&](const GraphEdge& e) {
      return (e.u == u && e.v == v) || (e.u == v && e.v == u);
    });
    if (dup) continue;
    edges.push_back({u, v, len(rng)});
    ++added;
  }
  std::vector<Terminal> terminals;
  for (int i = 1; i <= n; ++i) terminals.push_back({static_cast<PointId>(i), draw_weight(rng)});
  return Instance(std::move(ids), GraphMetric{std::move(edges)}, 0, std::move(terminals));
}

Instance star_heavy(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // At most three arms, far enough apart that no arc end is closer to
  // another arm than to the root.
  const int arms = std::clamp(n / 6, 1, 3);
  const double radius = 10.0;
  std::vector<std::string> ids{"r"};
  EuclideanMetric metric{2, {0.0, 0.0}};
  std::vector<Terminal> terminals;
  int placed = 0;
  for (int a = 0; a < arms; ++a) {
    const int count = n / arms + (a < n % arms ? 1 : 0);
    const double sector = 2.0 * std::numbers::pi / arms;
    const double start = a * sector + 0.3 * sector;
    const double span = 0.4 * sector;
    for (int i = 0; i < count; ++i) {
      const double frac = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
      const double angle = start + span * frac + 0.01 * sector * (u(rng) - 0.5);
      const double rad = radius * (1.0 + 0.05 * (u(rng) - 0.5));
      ids.push_back("t" + std::to_string(++placed));
      metric.coords.push_back(rad * std::cos(angle));
      metric.coords.push_back(rad * std::sin(angle));
      const bool end = i == 0 || i == count - 1;
      const double w = end ? 0.1 + 0.1 * u(rng) : (u(rng) < 0.7 ? 0.0 : 0.01 * u(rng));
      terminals.push_back({static_cast<PointId>(placed), w});
    }
  }
  return Instance(std::move(ids), std::move(metric), 0, std::move(terminals));
}

}  // namespace

Instance gen_random(int n_terminals, std::uint64_t seed, RandomFamily family) {
  if (n_terminals < 1) throw ValidationError("need at least one terminal");
  std::mt19937_64 rng(seed);
  switch (family) {
    case RandomFamily::kEuclidean2d: return euclidean_square(n_terminals, rng);
    case RandomFamily::kRandomGraph: return random_graph(n_terminals, rng);
    case RandomFamily::kStarHeavy: return star_heavy(n_terminals, rng);
  }
  throw ValidationError("unknown family");
}

ScalingCase gen_scaling_tree(std::size_t n_terminals, std::uint64_t seed) {
  if (n_terminals == 0) throw ValidationError("scaling tree needs at least one terminal");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = n_terminals + 1;
  EuclideanMetric m;
  m.coords.reserve(2 * n);
  m.coords.insert(m.coords.end(), {0.5, 0.5});
  std::vector<std::string> ids;
  ids.reserve(n);
  ids.emplace_back("r");
  std::vector<Terminal> terminals;
  terminals.reserve(n_terminals);
  for (std::size_t i = 1; i < n; ++i) {
    m.coords.push_back(unit(rng));
    m.coords.push_back(unit(rng));
    ids.push_back("t" + std::to_string(i));
    terminals.push_back({static_cast<PointId>(i), unit(rng)});
  }
  std::vector<double> xy = m.coords;
  Instance inst(std::move(ids), std::move(m), 0, std::move(terminals));

  auto dist = [&](PointId a, PointId b) {
    return std::hypot(xy[2 * a] - xy[2 * b], xy[2 * a + 1] - xy[2 * b + 1]);
  };
  std::vector<PointId> order(n_terminals);
  for (std::size_t i = 0; i < n_terminals; ++i) order[i] = static_cast<PointId>(i + 1);

  Arborescence tree;
  tree.add_node(0, NodeKind::kRoot);
  struct Cell {
    std::size_t lo, hi;
    int axis;
    NodeId parent;
  };
  std::vector<Cell> stack{{0, n_terminals, 0, tree.root()}};
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    const PointId from = tree.node(cell.parent).point;
    if (cell.hi - cell.lo == 1) {
      const PointId t = order[cell.lo];
      tree.add_node(t, NodeKind::kTerminal, cell.parent, dist(from, t));
      continue;
    }
    const std::size_t mid = cell.lo + (cell.hi - cell.lo) / 2;
    std::nth_element(order.begin() + cell.lo, order.begin() + mid, order.begin() + cell.hi,
                     [&](PointId a, PointId b) { return xy[2 * a + cell.axis] < xy[2 * b + cell.axis]; });
    const PointId at = order[mid];
    const NodeId s = tree.add_node(at, NodeKind::kSteiner, cell.parent, dist(from, at));
    stack.push_back({mid, cell.hi, 1 - cell.axis, s});
    stack.push_back({cell.lo, mid, 1 - cell.axis, s});
  }
  return {std::move(inst), std::move(tree)};
}

}  // namespace cdst
