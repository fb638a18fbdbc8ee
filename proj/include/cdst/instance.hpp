#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace cdst {

using PointId = std::uint32_t;
inline constexpr PointId kNoPoint = static_cast<PointId>(-1);

inline constexpr double kAuditTolerance = 1e-9;

struct Terminal {
  PointId point;
  double weight;
};

struct MatrixMetric {
  std::vector<double> distances;  // row-major n x n
};

struct EuclideanMetric {
  std::size_t dimension = 2;
  std::vector<double> coords;  // row-major n x dimension
};

struct GraphEdge {
  PointId u;
  PointId v;
  double length;
};

struct GraphMetric {
  std::vector<GraphEdge> edges;
};

using MetricSpec = std::variant<MatrixMetric, EuclideanMetric, GraphMetric>;

namespace detail {
struct LazyAllPairs;
}

/// A uniform cost-distance instance: a finite metric over a point table, a
/// root, and weighted terminals. Immutable after construction; copies share
/// the lazily built all-pairs table of graph metrics.
class Instance {
 public:
  Instance(std::vector<std::string> point_ids, MetricSpec metric, PointId root,
           std::vector<Terminal> terminals);

  std::size_t num_points() const { return ids_.size(); }
  const std::string& id(PointId p) const { return ids_[p]; }
  std::optional<PointId> find(const std::string& id) const;
  PointId lookup(const std::string& id) const;  // throws ValidationError

  PointId root() const { return root_; }
  const std::vector<Terminal>& terminals() const { return terminals_; }
  bool is_terminal(PointId p) const { return terminal_slot_[p] >= 0; }
  double weight(PointId p) const {
    return terminal_slot_[p] >= 0 ? terminals_[terminal_slot_[p]].weight : 0.0;
  }
  double total_weight() const;

  const MetricSpec& metric() const { return metric_; }
  bool is_graph() const { return std::holds_alternative<GraphMetric>(metric_); }

  double distance(PointId a, PointId b) const;
  double root_distance(PointId p) const { return root_dist_[p]; }

  /// Points that must be spanned: root first, then terminals in input order.
  std::vector<PointId> required_points() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, PointId> index_;
  MetricSpec metric_;
  PointId root_;
  std::vector<Terminal> terminals_;
  std::vector<std::int64_t> terminal_slot_;
  std::vector<double> root_dist_;
  std::shared_ptr<detail::LazyAllPairs> all_pairs_;
};

/// Largest triangle-inequality violation over all triples (0 when metric).
/// Also reports asymmetry and negative entries. Cubic; OpenMP-parallel.
double metric_violation(const MatrixMetric& m, std::size_t n);

}  // namespace cdst
