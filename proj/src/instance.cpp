#include "cdst/instance.hpp"

#include <cmath>
#include <mutex>
#include <unordered_set>

#include "cdst/errors.hpp"
#include "cdst/kernels.hpp"

namespace cdst {

namespace detail {
struct LazyAllPairs {
  kernels::Adjacency graph;
  std::once_flag once;
  std::vector<double> table;

  const std::vector<double>& get() {
    std::call_once(once, [this] { table = kernels::all_pairs(graph); });
    return table;
  }
};
}  // namespace detail

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

double euclidean(const EuclideanMetric& e, PointId a, PointId b) {
  double s = 0.0;
  const double* pa = e.coords.data() + a * e.dimension;
  const double* pb = e.coords.data() + b * e.dimension;
  for (std::size_t k = 0; k < e.dimension; ++k) s += (pa[k] - pb[k]) * (pa[k] - pb[k]);
  return std::sqrt(s);
}

}  // namespace

Instance::Instance(std::vector<std::string> point_ids, MetricSpec metric, PointId root,
                   std::vector<Terminal> terminals)
    : ids_(std::move(point_ids)),
      metric_(std::move(metric)),
      root_(root),
      terminals_(std::move(terminals)) {
  const std::size_t n = ids_.size();
  require(n > 0, "instance has no points");
  for (PointId p = 0; p < n; ++p) {
    require(!ids_[p].empty(), "empty point id at index " + std::to_string(p));
    require(index_.emplace(ids_[p], p).second, "duplicate point id '" + ids_[p] + "'");
  }
  require(root_ < n, "root index out of range");

  terminal_slot_.assign(n, -1);
  for (std::size_t i = 0; i < terminals_.size(); ++i) {
    const auto& t = terminals_[i];
    require(t.point < n, "terminal index out of range");
    require(t.point != root_, "root '" + ids_[root_] + "' listed as terminal");
    require(terminal_slot_[t.point] < 0, "duplicate terminal '" + ids_[t.point] + "'");
    require(std::isfinite(t.weight) && t.weight >= 0.0,
            "terminal '" + ids_[t.point] + "' has invalid weight");
    terminal_slot_[t.point] = static_cast<std::int64_t>(i);
  }

  if (auto* m = std::get_if<MatrixMetric>(&metric_)) {
    require(m->distances.size() == n * n, "distance matrix must be " + std::to_string(n) +
                                              "x" + std::to_string(n));
    for (double d : m->distances) require(std::isfinite(d), "distance matrix has non-finite entry");
    const double violation = kernels::triangle_violation(m->distances, n);
    require(violation <= kAuditTolerance,
            "distance matrix is not a metric (violation " + std::to_string(violation) + ")");
    root_dist_.assign(m->distances.begin() + root_ * n, m->distances.begin() + (root_ + 1) * n);
  } else if (auto* e = std::get_if<EuclideanMetric>(&metric_)) {
    require(e->dimension > 0, "euclidean dimension must be positive");
    require(e->coords.size() == n * e->dimension, "coordinate count does not match dimension");
    for (double x : e->coords) require(std::isfinite(x), "non-finite coordinate");
    root_dist_.resize(n);
    for (PointId p = 0; p < n; ++p) root_dist_[p] = euclidean(*e, root_, p);
  } else {
    auto& g = std::get<GraphMetric>(metric_);
    for (const auto& edge : g.edges) {
      require(edge.u < n && edge.v < n, "graph edge endpoint out of range");
      require(std::isfinite(edge.length) && edge.length >= 0.0, "graph edge has invalid length");
    }
    all_pairs_ = std::make_shared<detail::LazyAllPairs>();
    all_pairs_->graph = kernels::build_adjacency(n, g.edges);
    root_dist_ = kernels::dijkstra(all_pairs_->graph, root_);
    for (PointId p = 0; p < n; ++p)
      require(std::isfinite(root_dist_[p]), "graph is disconnected: '" + ids_[p] +
                                                "' unreachable from root");
  }
}

std::optional<PointId> Instance::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointId Instance::lookup(const std::string& id) const {
  auto p = find(id);
  if (!p) throw ValidationError("unknown point id '" + id + "'");
  return *p;
}

double Instance::total_weight() const {
  double w = 0.0;
  for (const auto& t : terminals_) w += t.weight;
  return w;
}

double Instance::distance(PointId a, PointId b) const {
  if (a == b) return 0.0;
  if (a == root_) return root_dist_[b];
  if (b == root_) return root_dist_[a];
  const std::size_t n = ids_.size();
  if (auto* m = std::get_if<MatrixMetric>(&metric_)) return m->distances[a * n + b];
  if (auto* e = std::get_if<EuclideanMetric>(&metric_)) return euclidean(*e, a, b);
  const auto& table = all_pairs_->get();
  // Symmetric by taking the smaller index as the source row.
  return a < b ? table[a * n + b] : table[b * n + a];
}

std::vector<PointId> Instance::required_points() const {
  std::vector<PointId> out{root_};
  for (const auto& t : terminals_) out.push_back(t.point);
  return out;
}

double metric_violation(const MatrixMetric& m, std::size_t n) {
  return kernels::triangle_violation(m.distances, n);
}

}  // namespace cdst
