// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qmalog/adversary.hpp"
#include "qmalog/diagnostics.hpp"
#include "qmalog/reductions.hpp"
#include "qmalog/seed.hpp"
#include "qmalog/verifier.hpp"
#include "test_support.hpp"

using namespace qmalog;
using qmalog::testing::varied_state;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ConstraintGraph triangle(std::size_t K) { return qmalog::testing::inequality_triangle(K); }

SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g{n, {}};
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

Outcome completeness() {
  std::vector<ConstraintGraph> pool;
  pool.push_back(triangle(3));
  for (std::size_t n = 4; n <= 10; n += 2) pool.push_back(cycle_instance(n, 2));
  for (std::size_t n = 3; n <= 10; ++n) pool.push_back(cycle_instance(n, 3));
  pool.push_back(regularize(qmalog::testing::path3(2), 2));
  for (std::uint64_t s = 0; pool.size() < 80 && s < 400; ++s) {
    const std::size_t n = 3 + s % 8;
    if (s % 2 == 0) {
      const auto sg = random_simple_graph(n, 0.4, split_seed(11, s));
      if (sg.edges.empty()) continue;
      auto g = three_coloring_to_constraint_graph(sg);
      if (is_satisfiable(g)) pool.push_back(std::move(g));
    } else {
      RandomCspParams params{n, 2 + s % 2, 0.5, 0.4, true};
      auto g = random_csp(params, split_seed(12, s));
      if (g.edge_count() > 0) pool.push_back(std::move(g));
    }
  }
  std::size_t tested = 0;
  double worst = 0.0;
  for (const auto& g : pool) {
    const auto witness = is_satisfiable(g);
    if (!witness) return {false, "generator produced an unsatisfiable instance"};
    const auto s = proper_state(g.n(), g.K(), *witness);
    worst = std::max(worst, total_rejection(g, ProofPair(s, s)).total_reject);
    ++tested;
  }
  const bool ok = tested >= 50 && worst <= 1e-9;
  return {ok, std::to_string(tested) + " satisfiable instances, max total_reject " + fmt("%.3g", worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::size_t instances = 0, pairs = 0;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 14; ++s) {
    ConstraintGraph g;
    if (s == 0) {
      g = triangle(3);
    } else if (s == 1) {
      g = regularize(triangle(2), 3);
    } else if (s == 2) {
      g = cycle_instance(5, 2);
    } else {
      RandomCspParams params{2 + s % 5, 1 + s % 3, 0.6, 0.5, s % 4 == 0};
      g = random_csp(params, split_seed(21, s));
      if (s % 5 == 0) g.add_edge(0, 0, std::vector<std::uint8_t>(g.K() * g.K(), 0));
    }
    ++instances;
    for (int t = 0; t < 12; ++t) {
      const auto a = varied_state(g.n(), g.K(), rng);
      const auto b = t % 4 == 0 ? a : varied_state(g.n(), g.K(), rng);
      const ProofPair pair(a, b);
      worst = std::max(worst, max_abs_difference(total_rejection(g, pair), rejection_by_enumeration(g, pair)));
      ++pairs;
    }
  }
  const bool ok = instances >= 10 && pairs >= 100 && worst < 1e-9;
  return {ok, std::to_string(pairs) + " pairs on " + std::to_string(instances) + " instances, max |delta| " +
                  fmt("%.3g", worst)};
}

struct UnsatInstance {
  std::string name;
  ConstraintGraph graph;
};

std::vector<UnsatInstance> unsat_family() {
  std::vector<UnsatInstance> out;
  out.push_back({"triangle K=2", triangle(2)});
  out.push_back({"triangle K=2 padded to d=3", regularize(triangle(2), 3)});
  for (std::size_t n : {5, 7, 9}) out.push_back({"odd cycle n=" + std::to_string(n), regularize(cycle_instance(n, 2), 2)});
  out.push_back({"K4 3-coloring", three_coloring_to_constraint_graph(complete_graph(4))});
  out.push_back({"K5 K=3 (d=4)", regularize(three_coloring_to_constraint_graph(complete_graph(5)), 4)});
  return out;
}

Outcome soundness() {
  std::mt19937_64 rng(77);
  std::size_t violations = 0, checked = 0, seesaw_pairs = 0, anomalies = 0;
  std::map<int, std::size_t> cases;
  double tightest = 1e300;
  for (const auto& inst : unsat_family()) {
    const auto& g = inst.graph;
    const auto stats = max_satisfied_fraction(g);
    if (!(stats.eta > 0.0)) return {false, inst.name + " is satisfiable"};
    const auto check = [&](const ProofPair& pair) {
      const auto r = classify(g, pair, stats.eta);
      ++cases[r.case_id];
      anomalies += r.anomalies.size();
      if (!r.predicted_bound) {
        ++violations;
        return;
      }
      const double rej = total_rejection(g, pair).total_reject;
      tightest = std::min(tightest, rej / *r.predicted_bound);
      if (rej < *r.predicted_bound - 1e-12) ++violations;
      ++checked;
    };
    for (int t = 0; t < 1200; ++t) {
      const Coloring* near = t % 2 ? &stats.best_coloring : nullptr;
      const auto a = varied_state(g.n(), g.K(), rng, near);
      const auto b = t % 5 == 0 ? a : varied_state(g.n(), g.K(), rng, near);
      check(ProofPair(a, b));
    }
    for (std::uint64_t s = 0; s < 5; ++s) {
      AttackConfig cfg;
      cfg.restarts = 6;
      cfg.seed = split_seed(31, s);
      cfg.honest_seed = s == 0;
      check(seesaw_attack(g, cfg).best_pair);
      ++seesaw_pairs;
    }
  }
  std::ostringstream d;
  d << unsat_family().size() << " instances, " << checked << " pairs (" << seesaw_pairs << " see-saw), violations "
    << violations << ", anomalies " << anomalies << ", min rejection/bound " << fmt("%.3g", tightest) << ", cases";
  for (const auto& [c, k] : cases) d << ' ' << c << ':' << k;
  return {violations == 0 && unsat_family().size() >= 5, d.str()};
}

Outcome lemmas() {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> gauss;
  std::size_t l41 = 0, l41_fail = 0, l42 = 0, l42_fail = 0;
  for (std::size_t t = 0; l41 < 100000 || l42 < 100000; ++t) {
    const std::size_t K = 2 + t % 7;
    auto row = qmalog::testing::random_row(K, rng);
    if (l41 < 100000) {
      ++l41;
      if (!lemma41_witness(row)) ++l41_fail;
    }
    cplx sum = 0.0;
    for (const auto& x : row) sum += x;
    const double keep = std::abs(gauss(rng)) * 0.02;
    for (auto& x : row) x -= (1.0 - keep) * sum / static_cast<double>(K);
    double norm = 0.0;
    for (const auto& x : row) norm += std::norm(x);
    for (auto& x : row) x /= std::sqrt(norm);
    if (l42 < 100000 && lemma42_premise(row)) {
      ++l42;
      const auto w = lemma42_witnesses(row);
      const double floor = 1.0 / std::pow(static_cast<double>(K), 4);
      if (!w || std::norm(row[w->first]) < floor || std::norm(row[w->second]) < floor) ++l42_fail;
    }
  }
  return {l41_fail == 0 && l42_fail == 0, "heavy-entry rows " + std::to_string(l41) + " (" + std::to_string(l41_fail) +
                                              " counterexamples), two-witness rows " + std::to_string(l42) + " (" +
                                              std::to_string(l42_fail) + " counterexamples), K in 2..8"};
}

Outcome seesaw_sanity() {
  struct Job {
    ConstraintGraph g;
    bool satisfiable;
  };
  std::vector<Job> jobs;
  jobs.push_back({triangle(3), true});
  jobs.push_back({cycle_instance(6, 2), true});
  jobs.push_back({cycle_instance(5, 3), true});
  jobs.push_back({regularize(qmalog::testing::path3(2), 2), true});
  RandomCspParams planted{6, 3, 0.6, 0.4, true};
  for (std::uint64_t s = 0; s < 6; ++s) jobs.push_back({random_csp(planted, split_seed(41, s)), true});
  for (const auto& inst : unsat_family()) jobs.push_back({inst.graph, false});
  jobs.push_back({regularize(cycle_instance(11, 2), 2), false});
  jobs.push_back({regularize(triangle(2), 3), false});
  jobs.push_back({regularize(cycle_instance(7, 3), 2), true});

  std::size_t runs = 0, restarts = 0, monotone_fail = 0, sat_fail = 0, unsat_fail = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& job = jobs[k];
    if (job.satisfiable != is_satisfiable(job.g).has_value()) return {false, "instance label mismatch"};
    AttackConfig cfg;
    cfg.seed = split_seed(51, k);
    const auto res = seesaw_attack(job.g, cfg);
    ++runs;
    for (const auto& tr : res.restart_traces) {
      ++restarts;
      for (std::size_t i = 1; i < tr.size(); ++i)
        if (tr[i] < tr[i - 1] - 1e-12) {
          ++monotone_fail;
          break;
        }
    }
    if (job.satisfiable) {
      if (res.acceptance < 1.0 - 1e-9) ++sat_fail;
    } else {
      const double eta = max_satisfied_fraction(job.g).eta;
      const auto r = classify(job.g, res.best_pair, eta);
      const double gap = 1.0 - res.acceptance;
      if (!(res.acceptance < 1.0) || !r.predicted_bound || gap < *r.predicted_bound) ++unsat_fail;
    }
  }
  std::ostringstream d;
  d << runs << " runs, " << restarts << " restarts, non-monotone " << monotone_fail << ", satisfiable below 1 "
    << sat_fail << ", unsatisfiable failures " << unsat_fail;
  return {runs >= 20 && monotone_fail == 0 && sat_fail == 0 && unsat_fail == 0, d.str()};
}

Outcome gap_sandwich() {
  std::vector<SweepInstance> family;
  for (std::size_t n : {5, 7, 9, 11, 13}) family.push_back({regularize(cycle_instance(n, 2), 2), std::nullopt});
  AttackConfig cfg;
  cfg.seed = 2718;
  const auto rows = gap_sweep(family, cfg);
  bool bound_ok = true, decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bound_ok = bound_ok && rows[i].theoretical_bound <= rows[i].measured_gap;
    if (i > 0) decreasing = decreasing && rows[i].measured_gap < rows[i - 1].measured_gap;
  }
  std::printf("%s", sweep_to_csv(rows).c_str());
  std::printf("fitted c in gap ~ c/n: %.6g\n", fit_inverse_n(rows));
  return {bound_ok && decreasing && rows.size() == 5,
          std::string("bound <= gap on every row: ") + (bound_ok ? "yes" : "no") +
              ", gap decreasing in n: " + (decreasing ? "yes" : "no")};
}

Outcome distance_relation() {
  std::mt19937_64 rng(99);
  std::size_t fails = 0, pairs = 0;
  double worst = -1.0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const std::size_t K = 1 + static_cast<std::size_t>((t / 8) % 3);
    const auto a = t % 3 ? varied_state(n, K, rng) : random_state(n, K, split_seed(61, static_cast<std::uint64_t>(t)));
    const auto b = varied_state(n, K, rng);
    const double slack = classical_distance(basis_distribution(a), basis_distribution(b)) - quantum_distance(a, b);
    worst = std::max(worst, slack);
    if (slack > 1e-9) ++fails;
    ++pairs;
  }
  return {fails == 0, std::to_string(pairs) + " pairs (n*K <= 24), violations " + std::to_string(fails) +
                          ", max classical - quantum " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "perfect completeness", 10, completeness},
      {"AC2", "analytic vs circuit oracle", 120, oracle_equivalence},
      {"AC3", "soundness case bounds", 600, soundness},
      {"AC4", "lemma suite", 30, lemmas},
      {"AC5", "see-saw sanity", 300, seesaw_sanity},
      {"AC6", "gap sandwich sweep", 600, gap_sandwich},
      {"AC7", "distance relation", 30, distance_relation},
  };
  bool all = true;
  std::vector<std::string> lines;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::ostringstream line;
    line << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  " << c.title << ": " << o.detail << " ["
         << fmt("%.2f", secs) << "s / " << c.time_limit_s << "s" << (in_time ? "" : ", over time limit") << "]";
    std::printf("%s\n", line.str().c_str());
    std::fflush(stdout);
    lines.push_back(line.str());
  }
  std::printf("\nsummary\n");
  for (const auto& l : lines) std::printf("%s\n", l.c_str());
  return all ? 0 : 1;
}
