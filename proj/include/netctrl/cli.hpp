#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "netctrl/ctrb_analysis.hpp"
#include "netctrl/equitable_partition.hpp"
#include "netctrl/extensions.hpp"
#include "netctrl/random_fixtures.hpp"
#include "netctrl/reachability.hpp"
#include "netctrl/report.hpp"
#include "netctrl/steering.hpp"

namespace netctrl::cli {

using nlohmann::json;

enum ExitCode : int {
  kControllable = 0,
  kInputError = 1,
  kInternalError = 2,
  kNotControllable = 3,
  kUndetermined = 4,
};

struct Options {
  std::string graph;
  bool no_exact = false;
  NumericTolerances tol;
  std::string general_linear;
  std::size_t order = 1;
  std::optional<std::size_t> count;
  std::size_t cap = 16;
  std::string x0 = "zero";
  std::string yf;
  double tf = 1.0;
  std::size_t steps = 2000;
  std::size_t nodes = 8;
  double edge_probability = 0.3;
  std::string kind = "plain";
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

inline std::optional<GeneralLinearSpec> load_spec(const Options& o) {
  if (o.general_linear.empty()) return std::nullopt;
  return parse_general_linear(read_file(o.general_linear));
}

/// Numbers separated by commas and/or whitespace.
inline std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::string s = text;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) throw Error(what + ": '" + tok + "' is not a finite number");
    out.push_back(v);
  }
  return out;
}

inline FloatVector to_vector(const std::vector<double>& v) {
  FloatVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline SystemTriple analysed_system(const Graph& g, const std::optional<GeneralLinearSpec>& spec) {
  return spec ? general_linear_triple(g, *spec) : system_triple(g);
}

struct AnalysisOutcome {
  json report;
  int exit_code = kUndetermined;
};

/// The full pipeline behind `analyze`.
inline AnalysisOutcome analysis_report(const Graph& g, const Options& o) {
  const bool exact = !o.no_exact;
  const auto spec = load_spec(o);
  const SystemTriple sys = analysed_system(g, spec);

  json r = report::header("analyze");
  r["tolerances"] = {{"eig", o.tol.eig}, {"rank", o.tol.rank}};
  r["exact"] = exact;
  r["graph"] = report::graph_summary(g);
  r["general_linear"] = spec ? json{{"sigma", spec->sigma}, {"state_dim", sys.n()}, {"p", sys.p()}} : json(nullptr);

  const ReachabilityReport reach = analyze_reachability(g);
  const std::optional<Prop1Result> p1 = exact ? std::optional(prop1_check(g)) : std::nullopt;
  r["reachability"] = report::reachability(reach, p1);

  const Theorem1Verdict th1 = theorem1_check(g, exact);
  r["partition"] = report::partition(th1);

  std::optional<TargetControllability> tc;
  if (exact) {
    tc = target_controllable(sys);
    r["rank"] = report::rank(*tc);
    const KalmanDecomposition kd = kalman_decompose(sys);
    r["kalman"] = {{"kappa", kd.kappa},
                   {"admissible_target_sets", report::row_sets(independent_row_sets(kd.p1, sys.p(), o.cap))},
                   {"theorem2", report::theorem2(theorem2_check(sys))}};
  } else {
    r["rank"] = nullptr;
    r["kalman"] = nullptr;
  }

  const auto pbh = pbh_target_check(sys, o.tol);
  r["pbh"] = report::pbh(pbh);
  const auto obstruction = left_eigen_obstruction(sys, o.tol);
  r["obstruction"] = report::obstruction(obstruction);

  const SccReport scc = scc_analyze(g);
  const Prop5Result p5 = prop5_check(g, spec, exact);
  r["scc"] = report::scc(scc);
  r["prop5"] = report::prop5(p5);

  if (o.order > 1 && exact) {
    const SystemTriple base = system_triple(g);
    r["lift"] = report::theorem3(theorem3_check(base, o.order), o.order, lifted_zero_structure_holds(base, o.order));
  } else {
    r["lift"] = nullptr;
  }

  json certs = json::array();
  bool negative = false;
  if (tc && !tc->controllable) certs.push_back({{"kind", "rank-deficit"}, {"dim", tc->dim}, {"p", tc->p}});
  if (!reach.unreachable_targets.empty()) {
    negative = true;
    certs.push_back({{"kind", "unreachable-targets"}, {"nodes", report::ids(reach.unreachable_targets)}});
  }
  if (obstruction) {
    negative = true;
    certs.push_back({{"kind", "left-eigenvector"}, {"lambda", report::complex_value(obstruction->lambda)}});
  }
  for (const auto& e : pbh)
    if (!e.pass) {
      negative = true;
      certs.push_back({{"kind", "pbh-rank"}, {"lambda", report::complex_value(e.lambda)}, {"rank", e.rank}});
    }
  if (p5.verdict == Prop5Verdict::NotTargetControllable) {
    negative = true;
    certs.push_back({{"kind", "scc-witness"}, {"component", report::ids(p5.certificate->component)}});
  }

  std::optional<bool> verdict;
  if (tc)
    verdict = tc->controllable;
  else if (negative)
    verdict = false;
  else if (!spec && th1.controllable)
    verdict = *th1.controllable;

  r["certificates"] = certs;
  r["verdict"] = !verdict ? "UNDETERMINED" : *verdict ? "TARGET_CONTROLLABLE" : "NOT_TARGET_CONTROLLABLE";
  return {std::move(r), !verdict ? kUndetermined : *verdict ? kControllable : kNotControllable};
}

inline json partition_report(const Graph& g, bool exact) {
  json r = report::header("partition");
  r["graph"] = report::graph_summary(g);
  r["partition"] = report::partition(theorem1_check(g, exact));
  return r;
}

inline json reach_report(const Graph& g, bool exact) {
  json r = report::header("reach");
  r["graph"] = report::graph_summary(g);
  r["reachability"] = report::reachability(analyze_reachability(g), exact ? std::optional(prop1_check(g)) : std::nullopt);
  return r;
}

inline json decompose_report(const Graph& g, const Options& o) {
  const SystemTriple sys = analysed_system(g, load_spec(o));
  const KalmanDecomposition kd = kalman_decompose(sys);
  json r = report::header("decompose");
  r["graph"] = report::graph_summary(g);
  r["kalman"] = report::kalman(kd);
  r["max_independent_row_sets"] = report::row_sets(max_independent_row_sets(kd.p1, o.cap));
  r["theorem2"] = report::theorem2(theorem2_check(sys));
  return r;
}

inline json select_targets_report(const Graph& g, const Options& o) {
  if (o.count && *o.count == 0) throw Error("--count must be at least 1");
  const SystemTriple sys = system_triple(g);
  const KalmanDecomposition kd = kalman_decompose(sys);
  const std::size_t count = o.count.value_or(kd.kappa);
  json r = report::header("select-targets");
  r["kappa"] = kd.kappa;
  r["count"] = count;
  const RowSetEnumeration sets = independent_row_sets(kd.p1, count, o.cap);
  r["sets"] = report::id_sets(sets.sets);
  r["truncated"] = sets.truncated;
  json reps = json::array();
  for (const auto& s : suggest_targets_cor1(g, o.cap)) reps.push_back({{"targets", report::ids(s.targets)}, {"rank", s.rank}});
  r["delta_representative_sets"] = reps;
  return r;
}

inline json scc_report(const Graph& g, const Options& o) {
  json r = report::header("scc");
  r["scc"] = report::scc(scc_analyze(g));
  r["prop5"] = report::prop5(prop5_check(g, load_spec(o), !o.no_exact));
  return r;
}

inline json lift_report(const Graph& g, const Options& o) {
  const SystemTriple base = system_triple(g);
  const SystemTriple lifted = lift_high_order(base, o.order);
  json r = report::header("lift");
  r["order"] = o.order;
  r["state_dim"] = lifted.n();
  r["theorem3"] = report::theorem3(theorem3_check(base, o.order), o.order, lifted_zero_structure_holds(base, o.order));
  r["a"] = report::matrix(lifted.a);
  r["b"] = report::matrix(lifted.b);
  r["h"] = report::matrix(lifted.h);
  return r;
}

inline SteeringProblem steering_problem(const Graph& g, const Options& o) {
  SteeringProblem p;
  p.triple = analysed_system(g, load_spec(o));
  const std::size_t n = p.triple.n();
  if (o.x0 == "zero") {
    p.x0 = FloatVector::Zero(static_cast<Eigen::Index>(n));
  } else {
    p.x0 = to_vector(parse_number_list(read_file(o.x0), "--x0"));
  }
  p.yf = to_vector(parse_number_list(o.yf, "--yf"));
  if (static_cast<std::size_t>(p.yf.size()) != p.triple.p())
    throw Error("--yf needs " + std::to_string(p.triple.p()) + " values, got " + std::to_string(p.yf.size()));
  p.tf = o.tf;
  p.steps = o.steps;
  return p;
}

inline Graph generated_graph(const Options& o) {
  std::uint64_t seed = 0;
  if (const char* env = std::getenv("NETCTRL_SEED")) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw Error(std::string("NETCTRL_SEED must be an unsigned integer, got '") + env + "'");
    }
  }
  Rng rng(seed);
  if (o.kind == "plain") {
    RandomGraphOptions ro;
    ro.n = o.nodes;
    ro.edge_probability = o.edge_probability;
    ro.leaders = std::max<std::size_t>(1, o.nodes / 4);
    ro.targets = std::max<std::size_t>(1, o.nodes / 3);
    return random_graph(rng, ro);
  }
  PlantedComponentFixture f = planted_component_fixture(rng, o.nodes, o.nodes);
  return o.kind == "planted-cut" ? f.cut : f.intact;
}

inline void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

/// Entry point shared by the executable and the in-process tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Target controllability analysis of leader-follower networks", "netctrl"};
  app.require_subcommand(1);
  Options o;

  auto graph_arg = [&](CLI::App* s) { s->add_option("graph", o.graph, "Graph file")->required(); };
  auto exact_flag = [&](CLI::App* s) { s->add_flag("--no-exact", o.no_exact, "Skip exact rank computations"); };
  auto tol_flags = [&](CLI::App* s) {
    s->add_option("--tol-eig", o.tol.eig, "Eigenvalue clustering tolerance")->check(CLI::PositiveNumber);
    s->add_option("--tol-rank", o.tol.rank, "Numeric rank tolerance")->check(CLI::PositiveNumber);
  };
  auto spec_flag = [&](CLI::App* s) {
    s->add_option("--general-linear", o.general_linear, "JSON agent dynamics {sigma, A, M, N, K}");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Run every check and print a JSON report");
  graph_arg(analyze);
  exact_flag(analyze);
  tol_flags(analyze);
  spec_flag(analyze);
  analyze->add_option("--cap", o.cap, "Maximum number of target sets listed")->check(CLI::PositiveNumber);
  analyze->add_option("--order", o.order, "Also check the m-th order lift")->check(CLI::PositiveNumber);

  CLI::App* part = app.add_subcommand("partition", "pi_0EP and the cell/target criterion");
  graph_arg(part);
  exact_flag(part);

  CLI::App* reach = app.add_subcommand("reach", "Reachability classes and zero rows of W");
  graph_arg(reach);
  exact_flag(reach);

  CLI::App* decompose = app.add_subcommand("decompose", "Exact Kalman controllability decomposition");
  graph_arg(decompose);
  spec_flag(decompose);
  decompose->add_option("--cap", o.cap, "Maximum number of row sets listed")->check(CLI::PositiveNumber);

  CLI::App* select = app.add_subcommand("select-targets", "Target sets admissible for target controllability");
  graph_arg(select);
  select->add_option("--count", o.count, "Number of targets (default: kappa)");
  select->add_option("--cap", o.cap, "Maximum number of sets listed")->check(CLI::PositiveNumber);

  CLI::App* scc = app.add_subcommand("scc", "Strong components and leader-target-follower connectivity");
  graph_arg(scc);
  exact_flag(scc);
  spec_flag(scc);

  CLI::App* lift = app.add_subcommand("lift", "m-th order lift and its rank");
  graph_arg(lift);
  lift->add_option("--order", o.order, "Agent order m")->check(CLI::PositiveNumber)->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Minimum-energy output steering, CSV on stdout");
  graph_arg(simulate);
  spec_flag(simulate);
  simulate->add_option("--x0", o.x0, "Initial state file, or 'zero'");
  simulate->add_option("--yf", o.yf, "Target outputs, comma separated")->required();
  simulate->add_option("--tf", o.tf, "Horizon")->check(CLI::PositiveNumber);
  simulate->add_option("--steps", o.steps, "Number of samples (>= 2)")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  simulate->add_option("--order", o.order, "Agent order m")->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen-random", "Random fixture graph (seed from NETCTRL_SEED)");
  gen->add_option("--nodes", o.nodes, "Node count")->check(CLI::Range(std::size_t{3}, std::size_t{200}));
  gen->add_option("--edge-prob", o.edge_probability, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--kind", o.kind, "plain, planted-intact or planted-cut")
      ->check(CLI::IsMember({"plain", "planted-intact", "planted-cut"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*gen) {
      out << serialize_graph(generated_graph(o));
      return 0;
    }
    const Graph g = load_graph(o.graph);
    if (*analyze) {
      AnalysisOutcome a = analysis_report(g, o);
      print_json(out, a.report);
      return a.exit_code;
    }
    if (*part) print_json(out, partition_report(g, !o.no_exact));
    if (*reach) print_json(out, reach_report(g, !o.no_exact));
    if (*decompose) print_json(out, decompose_report(g, o));
    if (*select) print_json(out, select_targets_report(g, o));
    if (*scc) print_json(out, scc_report(g, o));
    if (*lift) print_json(out, lift_report(g, o));
    if (*simulate) {
      const SteeringProblem p = steering_problem(g, o);
      try {
        const Trajectory tr = simulate_high_order(p, o.order);
        write_trajectory_csv(out, tr);
      } catch (const SteeringError& e) {
        err << "netctrl: " << e.what() << "; the targets cannot be steered independently\n";
        return kNotControllable;
      }
    }
    return 0;
  } catch (const ConsistencyError& e) {
    err << "netctrl: internal consistency check failed: " << e.what() << '\n';
    return kInternalError;
  } catch (const NumericError& e) {
    err << "netctrl: numeric failure: " << e.what() << '\n';
    return kInternalError;
  } catch (const ParseError& e) {
    err << "netctrl: parse error at " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "netctrl: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace netctrl::cli
