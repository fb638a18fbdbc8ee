#include "cdst/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace cdst::kernels {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Adjacency build_adjacency(std::size_t num_vertices, std::span<const GraphEdge> edges) {
  Adjacency g;
  g.num_vertices = num_vertices;
  g.offsets.assign(num_vertices + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets[e.u + 1];
    ++g.offsets[e.v + 1];
  }
  for (std::size_t i = 0; i < num_vertices; ++i) g.offsets[i + 1] += g.offsets[i];
  g.targets.resize(g.offsets.back());
  g.lengths.resize(g.offsets.back());
  std::vector<std::size_t> fill(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& e : edges) {
    g.targets[fill[e.u]] = e.v;
    g.lengths[fill[e.u]++] = e.length;
    g.targets[fill[e.v]] = e.u;
    g.lengths[fill[e.v]++] = e.length;
  }
  return g;
}

std::vector<double> dijkstra(const Adjacency& graph, PointId source) {
  std::vector<double> dist(graph.num_vertices, kInf);
  using Item = std::pair<double, PointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (std::size_t k = graph.offsets[u]; k < graph.offsets[u + 1]; ++k) {
      const PointId v = graph.targets[k];
      const double nd = d + graph.lengths[k];
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return dist;
}

std::vector<double> all_pairs(const Adjacency& graph) {
  const std::size_t n = graph.num_vertices;
  std::vector<double> out(n * n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < count; ++s) {
    const auto row = dijkstra(graph, static_cast<PointId>(s));
    std::copy(row.begin(), row.end(), out.begin() + s * count);
  }
  return out;
}

std::vector<double> all_pairs_serial(const Adjacency& graph) {
  const std::size_t n = graph.num_vertices;
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t k = graph.offsets[u]; k < graph.offsets[u + 1]; ++k) {
      auto& cell = d[u * n + graph.targets[k]];
      cell = std::min(cell, graph.lengths[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

namespace {
double pair_violation(std::span<const double> dist, std::size_t n, std::size_t i) {
  double worst = 0.0;
  const double* row = dist.data() + i * n;
  worst = std::max(worst, std::abs(row[i]));
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(row[j])) return kInf;
    worst = std::max(worst, -row[j]);
    worst = std::max(worst, std::abs(row[j] - dist[j * n + i]));
  }
  return worst;
}
}  // namespace

double triangle_violation(std::span<const double> dist, std::size_t n) {
  double worst = 0.0;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const double* di = dist.data() + i * count;
    double local = pair_violation(dist, n, static_cast<std::size_t>(i));
    for (std::int64_t j = 0; j < count; ++j) {
      const double* dj = dist.data() + j * count;
      const double dij = di[j];
      for (std::int64_t k = 0; k < count; ++k) local = std::max(local, di[k] - dij - dj[k]);
    }
    worst = std::max(worst, local);
  }
  return worst;
}

double triangle_violation_serial(std::span<const double> dist, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, pair_violation(dist, n, i));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, dist[i * n + k] - dist[i * n + j] - dist[j * n + k]);
  }
  return worst;
}

SteinerTable::SteinerTable(std::span<const double> dist, std::size_t n,
                           std::span<const PointId> terminals)
    : n_(n), terminals_(terminals.begin(), terminals.end()), dist_(dist.begin(), dist.end()) {
  const std::size_t subsets = std::size_t{1} << terminals_.size();
  dp_.assign(subsets * n_, kInf);
  join_.assign(subsets * n_, kNoPoint);
  split_.assign(subsets * n_, 0);
  if (terminals_.empty()) return;
  const auto count = static_cast<std::int64_t>(n_);
  std::vector<double> merged(n_);

  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    double* row = dp_.data() + mask * n_;
    if (std::has_single_bit(mask)) {
      const PointId t = terminals_[std::countr_zero(mask)];
#pragma omp parallel for schedule(static)
      for (std::int64_t v = 0; v < count; ++v) {
        row[v] = dist_[t * n_ + v];
        join_[mask * n_ + v] = t;
      }
      continue;
    }
    // Merge two disjoint parts at u. The part holding the lowest bit is
    // enumerated only once to halve the work.
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < count; ++u) {
      double best = kInf;
      std::uint32_t best_sub = 0;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        const std::uint32_t part = sub | low;
        if (part != mask) {
          const double c = dp_[part * n_ + u] + dp_[(mask ^ part) * n_ + u];
          if (c < best) {
            best = c;
            best_sub = part;
          }
        }
        if (sub == 0) break;
      }
      merged[u] = best;
      split_[mask * n_ + u] = best_sub;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < count; ++v) {
      double best = kInf;
      PointId best_u = kNoPoint;
      const double* dv = dist_.data() + v * count;
      for (std::int64_t u = 0; u < count; ++u) {
        const double c = dv[u] + merged[u];
        if (c < best) {
          best = c;
          best_u = static_cast<PointId>(u);
        }
      }
      row[v] = best;
      join_[mask * n_ + v] = best_u;
    }
  }
}

std::vector<std::pair<PointId, PointId>> SteinerTable::edges(PointId anchor) const {
  std::vector<std::pair<PointId, PointId>> out;
  if (terminals_.empty()) return out;
  std::vector<std::pair<std::uint32_t, PointId>> stack{{full_mask(), anchor}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    const PointId u = join_[mask * n_ + v];
    if (u != v) out.emplace_back(v, u);
    if (std::has_single_bit(mask)) continue;
    const std::uint32_t part = split_[mask * n_ + u];
    stack.emplace_back(part, u);
    stack.emplace_back(mask ^ part, u);
  }
  return out;
}

double steiner_optimum_serial(std::span<const double> dist, std::size_t n,
                              std::span<const PointId> terminals, PointId anchor) {
  const std::size_t m = terminals.size();
  if (m == 0) return 0.0;
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<std::vector<double>> table(subsets, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t v = 0; v < n; ++v) table[std::size_t{1} << i][v] = dist[terminals[i] * n + v];
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    if (std::has_single_bit(mask)) continue;
    std::vector<double> merged(n, kInf);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask)
        merged[u] = std::min(merged[u], table[sub][u] + table[mask ^ sub][u]);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u)
        table[mask][v] = std::min(table[mask][v], dist[v * n + u] + merged[u]);
  }
  return table[subsets - 1][anchor];
}

}  // namespace cdst::kernels
