#include "cdst/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cdst/errors.hpp"

namespace cdst::io {

namespace {

const json& field(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw ParseError(at.empty() ? "/" : at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at + "/" + key, "missing field");
  return *it;
}

std::string as_string(const json& v, const std::string& at) {
  if (!v.is_string()) throw ParseError(at, "expected a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& at) {
  if (!v.is_number()) throw ParseError(at, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(at, "expected a finite number");
  return x;
}

const json& as_array(const json& v, const std::string& at) {
  if (!v.is_array()) throw ParseError(at, "expected an array");
  return v;
}

PointId resolve(const std::unordered_map<std::string, PointId>& index, const json& v,
                const std::string& at) {
  const auto id = as_string(v, at);
  auto it = index.find(id);
  if (it == index.end()) throw ParseError(at, "unknown point id '" + id + "'");
  return it->second;
}

}  // namespace

Instance parse_instance(const json& doc) {
  const auto& metric = field(doc, "metric", "");
  const auto type = as_string(field(metric, "type", "/metric"), "/metric/type");

  std::vector<std::string> ids;
  MetricSpec spec;
  if (type == "matrix" || type == "euclidean") {
    const auto& points = as_array(field(doc, "points", ""), "/points");
    EuclideanMetric euclid;
    if (type == "euclidean") {
      const auto& dim = field(metric, "dimension", "/metric");
      if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0)
        throw ParseError("/metric/dimension", "expected a positive integer");
      euclid.dimension = dim.get<std::size_t>();
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::string at = "/points/" + std::to_string(i);
      if (type == "matrix") {
        ids.push_back(as_string(points[i], at));
        continue;
      }
      ids.push_back(as_string(field(points[i], "id", at), at + "/id"));
      const auto& coords = as_array(field(points[i], "coords", at), at + "/coords");
      if (coords.size() != euclid.dimension)
        throw ParseError(at + "/coords", "expected " + std::to_string(euclid.dimension) +
                                             " coordinates");
      for (std::size_t d = 0; d < coords.size(); ++d)
        euclid.coords.push_back(as_number(coords[d], at + "/coords/" + std::to_string(d)));
    }
    if (type == "matrix") {
      const auto& rows = as_array(field(metric, "distances", "/metric"), "/metric/distances");
      if (rows.size() != ids.size())
        throw ParseError("/metric/distances", "expected " + std::to_string(ids.size()) + " rows");
      MatrixMetric m;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string at = "/metric/distances/" + std::to_string(i);
        const auto& row = as_array(rows[i], at);
        if (row.size() != ids.size())
          throw ParseError(at, "expected " + std::to_string(ids.size()) + " entries");
        for (std::size_t j = 0; j < row.size(); ++j)
          m.distances.push_back(as_number(row[j], at + "/" + std::to_string(j)));
      }
      spec = std::move(m);
    } else {
      spec = std::move(euclid);
    }
  } else if (type == "graph") {
    const auto& vertices = as_array(field(doc, "vertices", ""), "/vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i)
      ids.push_back(as_string(vertices[i], "/vertices/" + std::to_string(i)));
  } else {
    throw ParseError("/metric/type", "unknown metric type '" + type + "'");
  }

  std::unordered_map<std::string, PointId> index;
  for (PointId p = 0; p < ids.size(); ++p)
    if (!index.emplace(ids[p], p).second) throw ParseError("/points", "duplicate id '" + ids[p] + "'");

  if (type == "graph") {
    GraphMetric g;
    const auto& edges = as_array(field(doc, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string at = "/edges/" + std::to_string(i);
      const auto u = resolve(index, field(edges[i], "u", at), at + "/u");
      const auto v = resolve(index, field(edges[i], "v", at), at + "/v");
      const double len = as_number(field(edges[i], "length", at), at + "/length");
      if (len < 0.0) throw ParseError(at + "/length", "negative length");
      g.edges.push_back({u, v, len});
    }
    spec = std::move(g);
  }

  const auto root = resolve(index, field(doc, "root", ""), "/root");
  std::vector<Terminal> terminals;
  const auto& list = as_array(field(doc, "terminals", ""), "/terminals");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = "/terminals/" + std::to_string(i);
    const auto p = resolve(index, field(list[i], "id", at), at + "/id");
    const double w = as_number(field(list[i], "weight", at), at + "/weight");
    if (w < 0.0) throw ParseError(at + "/weight", "negative weight");
    terminals.push_back({p, w});
  }
  return Instance(std::move(ids), std::move(spec), root, std::move(terminals));
}

json instance_to_json(const Instance& instance) {
  json doc;
  const std::size_t n = instance.num_points();
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, MatrixMetric>) {
          doc["metric"] = {{"type", "matrix"}};
          json rows = json::array();
          for (std::size_t i = 0; i < n; ++i)
            rows.push_back(std::vector<double>(m.distances.begin() + i * n,
                                               m.distances.begin() + (i + 1) * n));
          doc["metric"]["distances"] = rows;
          json points = json::array();
          for (PointId p = 0; p < n; ++p) points.push_back(instance.id(p));
          doc["points"] = points;
        } else if constexpr (std::is_same_v<M, EuclideanMetric>) {
          doc["metric"] = {{"type", "euclidean"}, {"dimension", m.dimension}};
          json points = json::array();
          for (PointId p = 0; p < n; ++p)
            points.push_back({{"id", instance.id(p)},
                              {"coords", std::vector<double>(m.coords.begin() + p * m.dimension,
                                                             m.coords.begin() +
                                                                 (p + 1) * m.dimension)}});
          doc["points"] = points;
        } else {
          doc["metric"] = {{"type", "graph"}};
          json vertices = json::array();
          for (PointId p = 0; p < n; ++p) vertices.push_back(instance.id(p));
          doc["vertices"] = vertices;
          json edges = json::array();
          for (const auto& e : m.edges)
            edges.push_back({{"u", instance.id(e.u)}, {"v", instance.id(e.v)}, {"length", e.length}});
          doc["edges"] = edges;
        }
      },
      instance.metric());
  doc["root"] = instance.id(instance.root());
  json terminals = json::array();
  for (const auto& t : instance.terminals())
    terminals.push_back({{"id", instance.id(t.point)}, {"weight", t.weight}});
  doc["terminals"] = terminals;
  return doc;
}

Solution parse_solution(const json& doc, const Instance& instance) {
  Solution sol;
  const auto& edges = as_array(field(doc, "edges", ""), "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const auto& pair = as_array(edges[i], at);
    if (pair.size() != 2) throw ParseError(at, "expected [u, v]");
    auto point = [&](std::size_t k) {
      const auto id = as_string(pair[k], at + "/" + std::to_string(k));
      auto p = instance.find(id);
      if (!p) throw ParseError(at + "/" + std::to_string(k), "unknown point id '" + id + "'");
      return *p;
    };
    sol.edges.emplace_back(point(0), point(1));
  }
  if (auto it = doc.find("costs"); it != doc.end()) {
    sol.costs.connection = as_number(field(*it, "connection", "/costs"), "/costs/connection");
    sol.costs.delay = as_number(field(*it, "delay", "/costs"), "/costs/delay");
    sol.costs.total = as_number(field(*it, "total", "/costs"), "/costs/total");
  }
  return sol;
}

json solution_to_json(const Instance& instance, const Solution& solution) {
  json edges = json::array();
  for (auto [u, v] : solution.edges) edges.push_back({instance.id(u), instance.id(v)});
  return {{"edges", edges},
          {"costs",
           {{"connection", solution.costs.connection},
            {"delay", solution.costs.delay},
            {"total", solution.costs.total}}}};
}

json report_to_json(const Instance& instance, const RunReport& rep) {
  auto id_or_null = [&](PointId p) -> json {
    return p == kNoPoint ? json(nullptr) : json(instance.id(p));
  };
  json components = json::array();
  for (const auto& c : rep.components) {
    components.push_back({{"W", c.W},
                          {"D", c.D},
                          {"C", c.C},
                          {"S1", c.S1},
                          {"cut_edge", c.cut_edge},
                          {"nodes", c.nodes},
                          {"port", id_or_null(c.port)},
                          {"cost", c.cost},
                          {"walk_bound", c.walk_bound},
                          {"weight_bound", c.weight_bound},
                          {"mu_bound", c.mu_bound},
                          {"lemma2_bound", c.cut_bound}});
  }
  json children = json::array();
  for (const auto& d : rep.root.children) {
    children.push_back({{"child", id_or_null(d.child)},
                        {"W", d.W},
                        {"D", d.D},
                        {"C", d.C},
                        {"edge", d.edge},
                        {"keep_cost", d.keep_cost},
                        {"port_cost", d.port_cost},
                        {"port", id_or_null(d.port)},
                        {"rewired", d.rewired},
                        {"empty", d.empty},
                        {"cost", d.cost},
                        {"bound", d.bound}});
  }
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"checked", c.checked},
                      {"violations", c.violations},
                      {"worst_margin", c.worst_margin}});
  }
  return {{"init", to_string(rep.init)},
          {"splitter", to_string(rep.splitter)},
          {"ports", to_string(rep.ports)},
          {"beta", rep.beta},
          {"mu", rep.mu},
          {"mu_overridden", rep.mu_overridden},
          {"kept_initial", rep.kept_initial},
          {"note", rep.note},
          {"C", rep.initial_cost},
          {"D", rep.delay_lb},
          {"components", components},
          {"root_component",
           {{"W", rep.root.W},
            {"D", rep.root.D},
            {"C", rep.root.C},
            {"cost", rep.root.cost},
            {"root_bound", rep.root.root_bound},
            {"max_child_weight", rep.root.max_child_weight},
            {"reconnected", rep.root.reconnected},
            {"children", children}}},
          {"assembled_cost", rep.assembled_cost},
          {"connection", rep.connection},
          {"delay", rep.delay},
          {"total", rep.total},
          {"smt_lower", rep.smt_lower},
          {"lower_bound", rep.lower_bound},
          {"ratio", rep.ratio},
          {"total_bound", rep.total_bound},
          {"checks", checks},
          {"bounds_ok", rep.bounds_ok},
          {"node_visits", rep.node_visits},
          {"initial_nodes", rep.initial_nodes},
          {"timings_ms",
           {{"init", rep.init_ms},
            {"split", rep.split_ms},
            {"reconnect", rep.reconnect_ms},
            {"assemble", rep.assemble_ms}}}};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON in '") + path + "': " + e.what());
  }
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

Instance read_instance(const std::string& path) { return parse_instance(read_json(path)); }

void write_instance(const std::string& path, const Instance& instance) {
  write_json(path, instance_to_json(instance));
}

void write_solution(const std::string& path, const Instance& instance, const Solution& solution,
                    const RunReport* report) {
  auto doc = solution_to_json(instance, solution);
  if (report) doc["report"] = report_to_json(instance, *report);
  write_json(path, doc);
}

Solution read_solution(const std::string& path, const Instance& instance) {
  return parse_solution(read_json(path), instance);
}

std::string aggregates_json_lines(const Instance& instance, const Arborescence& arb,
                                  const std::vector<NodeAggregates>& aggregates) {
  std::ostringstream out;
  for (NodeId v = 0; v < arb.size(); ++v) {
    const auto& n = arb.node(v);
    const char* kind = n.kind == NodeKind::kRoot       ? "root"
                       : n.kind == NodeKind::kTerminal ? "terminal"
                                                       : "steiner";
    json line = {{"node", v},
                 {"point", instance.id(n.point)},
                 {"kind", kind},
                 {"parent", n.parent == kNoNode ? json(nullptr) : json(n.parent)},
                 {"W", aggregates[v].W},
                 {"D", aggregates[v].D},
                 {"C", aggregates[v].C},
                 {"S1", aggregates[v].S1},
                 {"S2", aggregates[v].S2}};
    out << line.dump() << '\n';
  }
  return out.str();
}

}  // namespace cdst::io
