#include "qmalog/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmalog/adversary.hpp"
#include "qmalog/csp.hpp"
#include "qmalog/diagnostics.hpp"
#include "qmalog/json_io.hpp"
#include "qmalog/reductions.hpp"
#include "qmalog/seed.hpp"
#include "qmalog/verifier.hpp"

namespace qmalog {
namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr double kBoundSlack = 1e-12;

/// Thrown for conditions that map to exit code 1.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::string psi;
  std::string phi;
  std::string out;
  std::string format = "json";
  std::string sweep_format = "csv";
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::size_t restarts = 16;
  std::size_t max_iters = 200;
  double tol = 1e-10;
  std::optional<double> eta;
  bool oracle = false;

  // gen / sweep
  std::string kind;
  std::string family = "cycle";
  std::string edges;
  std::string cnf;
  std::string sizes = "5,7,9";
  std::size_t n = 6;
  std::size_t k = 3;
  std::optional<std::size_t> d;
  double p = 0.5;
  double density = 0.5;
  bool planted = false;
  bool no_eta = false;
};

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
  } else {
    write_text_file(opt.out, text);
  }
}

ConstraintGraph load_instance(const std::string& path) {
  auto g = graph_from_json(read_json_file(path));
  const auto issues = validate_graph(g);
  if (has_errors(issues)) {
    std::string msg = "invalid instance " + path + ":";
    for (const auto& i : issues)
      if (i.severity == IssueSeverity::Error) msg += "\n  " + i.message;
    throw std::invalid_argument(msg);
  }
  return g;
}

ProofPair load_pair(const Options& opt, const ConstraintGraph& g) {
  if (opt.psi.empty() || opt.phi.empty()) throw std::invalid_argument("--psi and --phi are required");
  ProofPair pair(state_from_json(read_json_file(opt.psi)), state_from_json(read_json_file(opt.phi)));
  check_dimensions(g, pair);
  return pair;
}

AttackConfig attack_config(const Options& opt) {
  AttackConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.max_iters = opt.max_iters;
  cfg.tol = opt.tol;
  cfg.seed = opt.seed;
  cfg.budget = opt.budget;
  return cfg;
}

SimpleGraph parse_edge_list(std::size_t n, const std::string& text) {
  SimpleGraph graph;
  graph.n = n;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto dash = token.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("edge '" + token + "' is not of the form a-b");
    graph.edges.emplace_back(std::stoul(token.substr(0, dash)), std::stoul(token.substr(dash + 1)));
  }
  return graph;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) sizes.push_back(std::stoul(token));
  if (sizes.empty()) throw std::invalid_argument("--sizes is empty");
  return sizes;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ConstraintGraph generate(const Options& opt) {
  ConstraintGraph g;
  if (opt.kind == "triangle") {
    g = ConstraintGraph(3, opt.k);
    const auto neq = [](Color a, Color b) { return a != b; };
    g.add_edge_if(0, 1, neq);
    g.add_edge_if(1, 2, neq);
    g.add_edge_if(0, 2, neq);
  } else if (opt.kind == "kcolor") {
    const auto graph = opt.edges.empty() ? random_simple_graph(opt.n, opt.p, split_seed(opt.seed, 0))
                                         : parse_edge_list(opt.n, opt.edges);
    g = three_coloring_to_constraint_graph(graph);
  } else if (opt.kind == "cycle") {
    g = cycle_instance(opt.n, opt.k);
  } else if (opt.kind == "cnf-naive") {
    if (opt.cnf.empty()) throw std::invalid_argument("cnf-naive needs --cnf");
    g = threesat_to_constraint_graph_naive(parse_dimacs(read_text(opt.cnf)));
  } else if (opt.kind == "regularized") {
    if (opt.instance.empty() || !opt.d) throw std::invalid_argument("regularized needs --instance and --d");
    g = load_instance(opt.instance);
  } else if (opt.kind == "random-csp") {
    RandomCspParams params;
    params.n = opt.n;
    params.K = opt.k;
    params.edge_prob = opt.p;
    params.table_density = opt.density;
    params.planted = opt.planted;
    g = random_csp(params, split_seed(opt.seed, 0));
  } else {
    throw std::invalid_argument("unknown --kind '" + opt.kind + "'");
  }
  if (opt.d) g = regularize(g, *opt.d);
  return g;
}

int cmd_gen(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto g = generate(opt);
  json summary{{"n", g.n()}, {"K", g.K()}, {"d", g.d() ? json(*g.d()) : json(nullptr)}, {"edges", g.edge_count()}};
  if (opt.no_eta) {
    summary["eta"] = nullptr;
  } else {
    const auto stats = max_satisfied_fraction(g, opt.budget);
    summary["eta"] = stats.eta;
    summary["satisfied_fraction"] = stats.satisfied_fraction;
    summary["best_coloring"] = stats.best_coloring;
  }
  for (const auto& issue : validate_graph(g))
    if (issue.severity == IssueSeverity::Warning) err << "warning: " << issue.message << '\n';

  const std::string text = graph_to_json(g).dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
    err << summary.dump() << '\n';
  } else {
    write_text_file(opt.out, text);
    out << summary.dump() << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto g = load_instance(opt.instance);
  const auto pair = load_pair(opt, g);
  const auto analytic = total_rejection(g, pair);
  json result = breakdown_to_json(analytic);
  int code = kExitOk;
  if (opt.oracle) {
    const auto oracle = rejection_by_enumeration(g, pair);
    const double delta = max_abs_difference(analytic, oracle);
    result["oracle"] = breakdown_to_json(oracle);
    result["max_delta"] = delta;
    if (!(delta <= kOracleTolerance)) code = kExitPropertyViolation;
  }
  emit(opt, result.dump(2) + "\n", out);
  return code;
}

int cmd_attack(const Options& opt, std::ostream& out) {
  const auto g = load_instance(opt.instance);
  const auto result = seesaw_attack(g, attack_config(opt));
  emit(opt, attack_to_json(result).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_diagnose(const Options& opt, std::ostream& out) {
  const auto g = load_instance(opt.instance);
  const auto pair = load_pair(opt, g);
  const double eta = opt.eta ? *opt.eta : max_satisfied_fraction(g, opt.budget).eta;
  if (!(eta > 0.0)) throw std::invalid_argument("instance is satisfiable (eta = 0); no soundness case applies");
  const auto report = classify(g, pair, eta);
  const auto breakdown = total_rejection(g, pair);
  json result = report_to_json(report);
  result["actual_rejection"] = breakdown.total_reject;
  result["breakdown"] = breakdown_to_json(breakdown);
  emit(opt, result.dump(2) + "\n", out);
  if (!report.anomalies.empty()) return kExitPropertyViolation;
  if (report.predicted_bound && breakdown.total_reject < *report.predicted_bound - kBoundSlack)
    return kExitPropertyViolation;
  return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  std::vector<SweepInstance> instances;
  for (std::size_t n : parse_sizes(opt.sizes)) {
    ConstraintGraph g;
    if (opt.family == "cycle") {
      g = cycle_instance(n, opt.k);
    } else if (opt.family == "random-csp") {
      RandomCspParams params;
      params.n = n;
      params.K = opt.k;
      params.edge_prob = opt.p;
      params.table_density = opt.density;
      params.planted = opt.planted;
      g = random_csp(params, split_seed(opt.seed, 1000 + n));
    } else {
      throw std::invalid_argument("unknown --family '" + opt.family + "'");
    }
    g = regularize(g, opt.d ? *opt.d : g.max_degree());
    instances.push_back({std::move(g), std::nullopt});
  }
  const auto rows = gap_sweep(instances, attack_config(opt));
  for (const auto& row : rows)
    if (row.theoretical_bound > row.measured_gap + 1e-9) throw PropertyViolation("sweep row violates the case bound");
  if (opt.sweep_format == "csv") {
    emit(opt, sweep_to_csv(rows), out);
  } else {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"n", r.n},
                     {"best_acceptance", r.best_acceptance},
                     {"measured_gap", r.measured_gap},
                     {"theoretical_bound", r.theoretical_bound},
                     {"case_id", r.case_id},
                     {"restarts", r.restarts},
                     {"seed", r.seed}});
    emit(opt, json{{"rows", arr}, {"fit_c", fit_inverse_n(rows)}}.dump(2) + "\n", out);
  }
  return kExitOk;
}

void add_attack_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "64-bit seed");
  cmd->add_option("--restarts", opt.restarts, "see-saw restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", opt.max_iters, "iterations per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opt.tol, "stop when acceptance improves by less than this");
  cmd->add_option("--budget", opt.budget, "max colorings to enumerate");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Simulator and adversarial test-bench for the two-proof constraint-graph verifier"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a constraint-graph instance");
  gen->add_option("--kind", opt.kind, "triangle | kcolor | cycle | cnf-naive | regularized | random-csp")->required();
  gen->add_option("--k", opt.k, "alphabet size");
  gen->add_option("--n", opt.n, "vertex count");
  gen->add_option("--edges", opt.edges, "edge list a-b,c-d (kcolor)");
  gen->add_option("--p", opt.p, "edge probability");
  gen->add_option("--density", opt.density, "allowed-pair probability (random-csp)");
  gen->add_flag("--planted", opt.planted, "plant a satisfying coloring (random-csp)");
  gen->add_option("--cnf", opt.cnf, "DIMACS CNF file (cnf-naive)");
  gen->add_option("--instance", opt.instance, "input instance (regularized)");
  gen->add_option("--d", opt.d, "pad to this regular degree with self-loops");
  gen->add_option("--seed", opt.seed, "64-bit seed");
  gen->add_option("--budget", opt.budget, "max colorings for the eta oracle");
  gen->add_flag("--no-eta", opt.no_eta, "skip the exhaustive eta computation");
  gen->add_option("--out", opt.out, "output path");

  auto* verify = app.add_subcommand("verify", "exact rejection probabilities of a proof pair");
  verify->add_option("--instance", opt.instance)->required();
  verify->add_option("--psi", opt.psi)->required();
  verify->add_option("--phi", opt.phi)->required();
  verify->add_flag("--oracle", opt.oracle, "cross-check with the enumeration oracle");
  verify->add_option("--out", opt.out);
  verify->add_option("--format", opt.format)->check(CLI::IsMember({"json"}));

  auto* attack = app.add_subcommand("attack", "see-saw search for a strong cheating pair");
  attack->add_option("--instance", opt.instance)->required();
  add_attack_flags(attack, opt);
  attack->add_option("--out", opt.out);
  attack->add_option("--format", opt.format)->check(CLI::IsMember({"json"}));

  auto* diagnose = app.add_subcommand("diagnose", "classify a pair into a soundness case");
  diagnose->add_option("--instance", opt.instance)->required();
  diagnose->add_option("--psi", opt.psi)->required();
  diagnose->add_option("--phi", opt.phi)->required();
  diagnose->add_option("--eta", opt.eta, "unsatisfiability gap; computed exactly when omitted");
  diagnose->add_option("--budget", opt.budget);
  diagnose->add_option("--out", opt.out);
  diagnose->add_option("--format", opt.format)->check(CLI::IsMember({"json"}));

  auto* sweep = app.add_subcommand("sweep", "gap sweep over an instance family");
  sweep->add_option("--family", opt.family, "cycle | random-csp");
  sweep->add_option("--sizes", opt.sizes, "comma-separated vertex counts");
  sweep->add_option("--k", opt.k, "alphabet size");
  sweep->add_option("--d", opt.d, "regular degree (default: max degree)");
  sweep->add_option("--p", opt.p);
  sweep->add_option("--density", opt.density);
  sweep->add_flag("--planted", opt.planted);
  add_attack_flags(sweep, opt);
  sweep->add_option("--out", opt.out);
  sweep->add_option("--format", opt.sweep_format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> argv_storage{"qmalog"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(opt, out, err);
    if (*verify) return cmd_verify(opt, out);
    if (*attack) return cmd_attack(opt, out);
    if (*diagnose) return cmd_diagnose(opt, out);
    if (*sweep) return cmd_sweep(opt, out);
  } catch (const PropertyViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitPropertyViolation;
  } catch (const InvariantViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitPropertyViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qmalog
