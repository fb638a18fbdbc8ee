#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <functional>
#include <optional>
#include <sstream>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "cdst/analysis.hpp"
#include "cdst/errors.hpp"
#include "cdst/instances.hpp"
#include "cdst/io.hpp"
#include "cdst/oracle.hpp"
#include "cdst/solve.hpp"

namespace cdst::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("cdst", sink);
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CDST_LOG")) log->set_level(spdlog::level::from_str(env));
  return log;
}

std::string num(double x, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

std::string fixed(double x, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << x;
  return s.str();
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string input, output, report, initial, dump;
  std::string beta_method = "mst";
  std::string mu = "auto";
  std::string splitter = "improved";
  std::string ports = "terminals";
};

int cmd_solve(const SolveArgs& a, spdlog::logger& log, std::ostream& out) {
  const Instance inst = io::read_instance(a.input);
  SolveOptions opt;
  opt.init = a.beta_method == "exact" ? InitMethod::kExact : InitMethod::kMst;
  opt.splitter = a.splitter == "baseline" ? SplitterKind::kBaseline : SplitterKind::kImproved;
  opt.ports = a.ports == "any" ? PortPolicy::kAny : PortPolicy::kTerminals;
  if (a.mu != "auto") {
    std::size_t used = 0;
    double mu = 0.0;
    try {
      mu = std::stod(a.mu, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != a.mu.size() || !(mu > 0.0) || !std::isfinite(mu))
      throw ValidationError("--mu must be 'auto' or a positive number, got '" + a.mu + "'");
    opt.mu = mu;
  }
  if (!a.initial.empty()) {
    opt.init = InitMethod::kGiven;
    opt.initial_tree = io::read_solution(a.initial, inst).edges;
  }

  auto [sol, rep] = solve(inst, opt);
  log.info("mu={} C={} D={} total={} ratio={}", rep.mu, rep.initial_cost, rep.delay_lb, rep.total,
           rep.ratio);
  for (const auto& c : rep.components)
    log.debug("component port={} W={} cost={} bound={}",
              c.port == kNoPoint ? "-" : inst.id(c.port), c.W, c.cost, c.cut_bound);
  if (!rep.note.empty()) log.info("{}", rep.note);

  io::write_solution(a.output, inst, sol, &rep);
  if (!a.report.empty()) io::write_json(a.report, io::report_to_json(inst, rep));
  if (!a.dump.empty()) {
    EdgeList tree = opt.initial_tree ? *opt.initial_tree
                    : opt.init == InitMethod::kExact ? exact_steiner(inst)
                                                     : mst_steiner(inst);
    const Arborescence arb = binarize(tree, inst);
    std::ofstream dump(a.dump);
    dump << io::aggregates_json_lines(inst, arb, compute_aggregates(arb, inst));
  }
  out << "total " << num(rep.total, 12) << "  lower_bound " << num(rep.lower_bound, 12)
      << "  ratio " << num(rep.ratio, 8) << '\n';
  if (!rep.bounds_ok) {
    for (const auto& c : rep.checks)
      if (c.violations > 0)
        log.error("bound '{}' violated {} time(s), worst margin {}", c.name, c.violations,
                  c.worst_margin);
    return kInternal;
  }
  return kOk;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string& input, const std::string& solution, std::ostream& out,
              std::ostream& err) {
  const Instance inst = io::read_instance(input);
  const auto doc = io::read_json(solution);
  const Solution claimed = io::parse_solution(doc, inst);
  CostBreakdown actual;
  try {
    actual = evaluate_cost(inst, claimed);
  } catch (const StructuralError& e) {
    err << "structure: " << e.what() << '\n';
    return kMismatch;
  }
  if (!doc.contains("costs")) {
    err << "costs: missing\n";
    return kMismatch;
  }
  bool ok = true;
  auto compare = [&](const char* name, double file, double recomputed) {
    if (std::abs(file - recomputed) <= kAuditTolerance * std::max(1.0, std::abs(recomputed)))
      return;
    ok = false;
    err << "- costs." << name << ": " << num(file, 17) << '\n'
        << "+ costs." << name << ": " << num(recomputed, 17) << '\n';
  };
  compare("connection", claimed.costs.connection, actual.connection);
  compare("delay", claimed.costs.delay, actual.delay);
  compare("total", claimed.costs.total, actual.total);
  if (!ok) return kMismatch;
  out << "ok  total " << num(actual.total, 12) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchRow {
  std::string instance;
  std::string beta_method;
  std::string splitter;
  double mu = 0, C = 0, D = 0, total = 0, lower_bound = 0, ratio = 0, wall_ms = 0;
  std::size_t nodes = 0;
  std::optional<analysis::GapValues> formula;
};

struct BenchJob {
  std::string name;
  std::function<Instance()> make;
  InitMethod init;
  SplitterKind splitter;
  std::optional<analysis::GapValues> formula;
};

struct BenchArgs {
  int gap_max = 20;
  int seeds = 5;
  int terminals = 12;
  std::vector<std::string> families{"euclidean2d", "random-graph", "star-heavy"};
  bool scaling = false;
  std::vector<std::size_t> sizes{10000, 100000, 1000000};
  std::uint64_t seed = 1;
};

int cmd_bench_sweep(const BenchArgs& a, std::ostream& out) {
  std::vector<BenchJob> jobs;
  const SplitterKind kinds[] = {SplitterKind::kImproved, SplitterKind::kBaseline};
  for (int k = 1; k <= a.gap_max; ++k) {
    const double dp = 0.9 / k, d = 0.5 / k;
    for (auto s : kinds)
      jobs.push_back({"gap-k" + std::to_string(k), [=] { return gen_gap(k, d, dp); },
                      InitMethod::kMst, s, analysis::gap_formulas(k, 0.0)});
  }
  for (const auto& fam : a.families) {
    const RandomFamily family = parse_family(fam);
    for (int seed = 1; seed <= a.seeds; ++seed) {
      const std::string name = fam + "-n" + std::to_string(a.terminals) + "-s" + std::to_string(seed);
      auto make = [=, n = a.terminals] { return gen_random(n, seed, family); };
      std::vector<InitMethod> inits{InitMethod::kMst};
      if (static_cast<std::size_t>(a.terminals) + 1 <= kExactSteinerLimit)
        inits.push_back(InitMethod::kExact);
      for (auto init : inits)
        for (auto s : kinds) jobs.push_back({name, make, init, s, std::nullopt});
    }
  }

  std::vector<BenchRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const auto count = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& job = jobs[i];
    try {
      const Instance inst = job.make();
      SolveOptions opt;
      opt.init = job.init;
      opt.splitter = job.splitter;
      const auto t0 = Clock::now();
      const auto rep = solve(inst, opt).second;
      rows[i] = {job.name,        to_string(job.init), to_string(job.splitter),
                 rep.mu,          rep.initial_cost,    rep.delay_lb,
                 rep.total,       rep.lower_bound,     rep.ratio,
                 elapsed_ms(t0),  rep.initial_nodes,   job.formula};
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) throw ValidationError(jobs[i].name + ": " + errors[i]);

  out << "instance,beta_method,splitter,mu,C,D,total,lower_bound,ratio,wall_ms,nodes,"
         "formula_lower_bound,formula_opt,formula_ratio\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.beta_method << ',' << r.splitter << ',' << num(r.mu) << ','
        << num(r.C) << ',' << num(r.D) << ',' << num(r.total) << ',' << num(r.lower_bound) << ','
        << num(r.ratio) << ',' << fixed(r.wall_ms, 3) << ',' << r.nodes << ',';
    if (r.formula)
      out << num(r.formula->lower_bound) << ',' << num(r.formula->optimum) << ','
          << fixed(r.formula->ratio(), 5);
    else
      out << ",,";
    out << '\n';
  }
  return kOk;
}

int cmd_bench_scaling(const BenchArgs& a, std::ostream& out) {
  out << "terminals,nodes,mu,split_ms,reconnect_ms,wall_ms,node_visits,visits_per_terminal\n";
  for (auto n : a.sizes) {
    const auto sc = gen_scaling_tree(n, a.seed);
    const auto mu = choose_mu(sc.tree.total_cost(), delay_lower_bound(sc.instance));
    const auto t0 = Clock::now();
    const auto rep = solve_arborescence(sc.instance, sc.tree, mu.keep_initial ? 1.0 : mu.mu,
                                        SplitterKind::kImproved, PortPolicy::kTerminals, false)
                         .second;
    const double wall = elapsed_ms(t0);
    out << n << ',' << sc.tree.size() << ',' << num(rep.mu) << ',' << fixed(rep.split_ms, 3)
        << ',' << fixed(rep.reconnect_ms, 3) << ',' << fixed(wall, 3) << ',' << rep.node_visits
        << ',' << fixed(static_cast<double>(rep.node_visits) / static_cast<double>(n), 4)
        << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- factors

int cmd_factors(std::vector<double> betas, std::ostream& out) {
  if (betas.empty()) betas = {1.0, std::log(4.0), 1.5, 2.0};
  out << "beta";
  for (double b : betas) out << ',' << fixed(b, 5);
  out << "\nbaseline";
  for (double b : betas) out << ',' << fixed(analysis::round_up(analysis::baseline_factor(b), 5), 5);
  out << "\nimproved";
  for (double b : betas) out << ',' << fixed(analysis::round_up(analysis::approx_factor(b), 5), 5);
  out << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Cost-distance Steiner trees by splitting and reconnecting", "cdst"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a tree for an instance");
  solve_cmd->add_option("--input", sa.input, "Instance JSON")->required();
  solve_cmd->add_option("--output", sa.output, "Solution JSON to write")->required();
  solve_cmd->add_option("--report", sa.report, "Run report JSON to write");
  solve_cmd->add_option("--beta-method", sa.beta_method, "Initial Steiner tree")
      ->check(CLI::IsMember({"mst", "exact"}));
  solve_cmd->add_option("--mu", sa.mu, "Split threshold: auto or a positive number");
  solve_cmd->add_option("--splitter", sa.splitter)->check(CLI::IsMember({"improved", "baseline"}));
  solve_cmd->add_option("--ports", sa.ports)->check(CLI::IsMember({"terminals", "any"}));
  solve_cmd->add_option("--initial", sa.initial, "Solution JSON used as the initial tree");
  solve_cmd->add_option("--dump-aggregates", sa.dump, "Per-node aggregates as JSON lines");

  std::string check_input, check_solution;
  auto* check_cmd = app.add_subcommand("check", "Re-validate a solution file");
  check_cmd->add_option("--input", check_input)->required();
  check_cmd->add_option("--solution", check_solution)->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  int gap_k = 1;
  double gap_delta = 0.0, gap_delta_prime = 0.0;
  std::string gap_out;
  auto* gap_cmd = gen_cmd->add_subcommand("gap", "Lower-bound gap family");
  gap_cmd->add_option("--k", gap_k)->required();
  gap_cmd->add_option("--delta", gap_delta)->required();
  gap_cmd->add_option("--delta-prime", gap_delta_prime)->required();
  gap_cmd->add_option("--out", gap_out)->required();
  int rnd_terminals = 10;
  std::uint64_t rnd_seed = 1;
  std::string rnd_family = "euclidean2d", rnd_out;
  auto* random_cmd = gen_cmd->add_subcommand("random", "Random instance");
  random_cmd->add_option("--terminals", rnd_terminals)->required();
  random_cmd->add_option("--seed", rnd_seed)->required();
  random_cmd->add_option("--family", rnd_family)
      ->check(CLI::IsMember({"euclidean2d", "random-graph", "star-heavy"}));
  random_cmd->add_option("--out", rnd_out)->required();

  std::string oracle_input, oracle_output;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of a small instance");
  oracle_cmd->add_option("--input", oracle_input)->required();
  oracle_cmd->add_option("--output", oracle_output, "Solution JSON (default: stdout)");

  std::vector<double> betas;
  auto* factors_cmd = app.add_subcommand("factors", "Approximation factors per beta");
  factors_cmd->add_option("--beta", betas, "Steiner approximation factors (repeatable)");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark sweeps as CSV");
  bench_cmd->add_option("--gap-max", ba.gap_max, "Largest gap instance k (0 to skip)");
  bench_cmd->add_option("--seeds", ba.seeds, "Seeds per random family");
  bench_cmd->add_option("--terminals", ba.terminals, "Terminals per random instance");
  bench_cmd->add_option("--families", ba.families)->delimiter(',');
  bench_cmd->add_flag("--scaling", ba.scaling, "Split+reconnect time against |T|");
  bench_cmd->add_option("--sizes", ba.sizes, "Terminal counts for --scaling")->delimiter(',');
  bench_cmd->add_option("--seed", ba.seed, "Seed for --scaling");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa, *log, out);
    if (*check_cmd) return cmd_check(check_input, check_solution, out, err);
    if (*gap_cmd) {
      io::write_instance(gap_out, gen_gap(gap_k, gap_delta, gap_delta_prime));
      return kOk;
    }
    if (*random_cmd) {
      if (rnd_terminals < 1) throw ValidationError("--terminals must be positive");
      io::write_instance(rnd_out, gen_random(rnd_terminals, rnd_seed, parse_family(rnd_family)));
      return kOk;
    }
    if (*oracle_cmd) {
      const Instance inst = io::read_instance(oracle_input);
      const auto res = oracle::brute_force_opt(inst);
      auto doc = io::solution_to_json(inst, res.solution);
      doc["value"] = res.value;
      doc["nodes_explored"] = res.nodes_explored;
      if (oracle_output.empty())
        out << doc.dump(2) << '\n';
      else
        io::write_json(oracle_output, doc);
      return kOk;
    }
    if (*factors_cmd) return cmd_factors(betas, out);
    if (*bench_cmd) return ba.scaling ? cmd_bench_scaling(ba, out) : cmd_bench_sweep(ba, out);
  } catch (const ValidationError& e) {
    log->error("{}", e.what());
    return kInvalid;
  } catch (const StructuralError& e) {
    log->error("{}", e.what());
    return kInvalid;
  } catch (const InvariantError& e) {
    log->critical("internal invariant failed: {}", e.what());
    return kInternal;
  }
  return kInvalid;
}

}  // namespace cdst::cli
