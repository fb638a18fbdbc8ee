#pragma once

// JSON schemas (ids are strings, numbers are IEEE doubles):
//
// Instance
//   { "metric": {"type": "matrix", "distances": [[...], ...]},
//     "points": ["a", "b", ...], "root": "a",
//     "terminals": [{"id": "b", "weight": 1.5}, ...] }
//   { "metric": {"type": "euclidean", "dimension": 2},
//     "points": [{"id": "a", "coords": [0, 0]}, ...], ... }
//   { "metric": {"type": "graph"},
//     "vertices": ["a", ...], "edges": [{"u": "a", "v": "b", "length": 1}, ...], ... }
//
// Solution
//   { "edges": [["a", "b"], ...],
//     "costs": {"connection": .., "delay": .., "total": ..},
//     "report": { ... }   (optional, written by `solve`) }

#include <optional>
#include <string>

#include "json.hpp"

#include "cdst/instance.hpp"
#include "cdst/solution.hpp"
#include "cdst/solve.hpp"
#include "cdst/splitter.hpp"

namespace cdst::io {

using nlohmann::json;

Instance parse_instance(const json& doc);
json instance_to_json(const Instance& instance);

Solution parse_solution(const json& doc, const Instance& instance);
json solution_to_json(const Instance& instance, const Solution& solution);

json report_to_json(const Instance& instance, const RunReport& report);

json read_json(const std::string& path);
void write_json(const std::string& path, const json& doc);

Instance read_instance(const std::string& path);
void write_instance(const std::string& path, const Instance& instance);

void write_solution(const std::string& path, const Instance& instance, const Solution& solution,
                    const RunReport* report = nullptr);
Solution read_solution(const std::string& path, const Instance& instance);

/// One JSON object per node: id, point, kind, parent and the five aggregates.
std::string aggregates_json_lines(const Instance& instance, const Arborescence& arb,
                                  const std::vector<NodeAggregates>& aggregates);

}  // namespace cdst::io
