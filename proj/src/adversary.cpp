#include "qmalog/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qmalog/diagnostics.hpp"
#include "qmalog/seed.hpp"
#include "qmalog/verifier.hpp"

namespace qmalog {
namespace {

using Index = Eigen::Index;

double pair_acceptance(const ConstraintGraph& g, const ProofState& psi, const ProofState& phi) {
  return total_rejection(g, ProofPair(psi, phi)).acceptance;
}

// Coloring whose proper pair violates the fewest non-loop constraints;
// the lexicographically smallest among ties.
Coloring best_proper_coloring(const ConstraintGraph& g) {
  Coloring best(g.n(), 0);
  std::size_t best_violations = g.edge_count() + 1;
  for_each_coloring(g.n(), g.K(), [&](const Coloring& c) {
    std::size_t violations = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edges()[e];
      if (!edge.is_self_loop() && !g.allows(e, c[edge.u], c[edge.v])) ++violations;
    }
    if (violations < best_violations) {
      best_violations = violations;
      best = c;
    }
    return best_violations > 0;
  });
  return best;
}

ProofState as_state(const ConstraintGraph& g, const Eigen::VectorXcd& v) {
  return ProofState::normalized(g.n(), g.K(), v);
}

}  // namespace

AcceptanceForm acceptance_form(const ConstraintGraph& g, const ProofState& fixed, ProofSide side) {
  if (fixed.n() != g.n() || fixed.K() != g.K()) throw std::invalid_argument("fixed proof does not match instance");
  const auto n = static_cast<Index>(g.n());
  const auto K = static_cast<Index>(g.K());
  const Index D = n * K;
  const Eigen::VectorXcd& f = fixed.amps();

  // Swap test accepts with (1 + |<f|x>|^2) / 2.
  Eigen::MatrixXcd eq = 0.5 * (Eigen::MatrixXcd::Identity(D, D) + f * f.adjoint());

  // Consistency: probability the free outcome (i, j) is rejected against the
  // fixed proof's outcome distribution. The rejection rule is symmetric in
  // the two proofs because tables are oriented by vertex index.
  const Eigen::MatrixXd Q = fixed.outcome_probabilities();
  Eigen::MatrixXd reject(n, K);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < K; ++j) reject(i, j) = Q.row(i).sum() - Q(i, j);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    if (edge.is_self_loop()) continue;
    const auto u = static_cast<Index>(edge.u);
    const auto v = static_cast<Index>(edge.v);
    for (Color a = 0; a < g.K(); ++a) {
      for (Color b = 0; b < g.K(); ++b) {
        if (g.allows(e, a, b)) continue;
        const auto ia = static_cast<Index>(a);
        const auto ib = static_cast<Index>(b);
        reject(u, ia) += Q(v, ib);
        reject(v, ib) += Q(u, ia);
      }
    }
  }
  Eigen::VectorXcd cons_diag(D);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < K; ++j) cons_diag[i * K + j] = 1.0 - reject(i, j);

  // Uniformity sub-test on the free proof rejects with <x|U|x>,
  // U = (1/K)(block-sum projector - (1/n)|w><w|), w the all-ones vector.
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(D, D);
  for (Index i = 0; i < n; ++i) U.block(i * K, i * K, K, K).setConstant(1.0);
  U.array() -= 1.0 / static_cast<double>(n);
  U /= static_cast<double>(K);
  const double keep_fixed = 1.0 - uniformity_report(fixed).reject;
  Eigen::MatrixXcd unif = keep_fixed * (Eigen::MatrixXcd::Identity(D, D) - U);

  AcceptanceForm form;
  form.side = side;
  form.matrix = (eq + Eigen::MatrixXcd(cons_diag.asDiagonal()) + unif) / 3.0;
  return form;
}

double evaluate_form(const AcceptanceForm& form, const Eigen::VectorXcd& x) {
  return x.dot(form.matrix * x).real();
}

Eigen::VectorXcd top_eigenvector(const Eigen::MatrixXcd& hermitian, double* eigenvalue) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  const Index last = hermitian.rows() - 1;
  Eigen::VectorXcd v = solver.eigenvectors().col(last);
  if (eigenvalue) *eigenvalue = solver.eigenvalues()[last];
  // Fix the global phase: largest-magnitude entry real and positive.
  Index pivot = 0;
  v.cwiseAbs2().maxCoeff(&pivot);
  const cplx phase = v[pivot] / std::abs(v[pivot]);
  v /= phase;
  return v.normalized();
}

AttackResult classical_attack_bruteforce(const ConstraintGraph& g, std::uint64_t budget) {
  if (coloring_count(g.n(), g.K()) > budget)
    throw BudgetExceeded("classical attack: K^n exceeds the enumeration budget");
  std::optional<ProofPair> best;
  double best_acc = -1.0;
  auto consider = [&](const ProofState& psi, const ProofState& phi) {
    const double acc = pair_acceptance(g, psi, phi);
    if (acc > best_acc) {
      best_acc = acc;
      best.emplace(psi, phi);
    }
  };
  for_each_coloring(g.n(), g.K(), [&](const Coloring& c) {
    const auto s = proper_state(g.n(), g.K(), c);
    consider(s, s);
    return true;
  });
  for (Vertex i = 0; i < g.n(); ++i)
    for (Color j = 0; j < g.K(); ++j)
      for (Vertex i2 = 0; i2 < g.n(); ++i2)
        for (Color j2 = 0; j2 < g.K(); ++j2) consider(basis_state(g.n(), g.K(), i, j), basis_state(g.n(), g.K(), i2, j2));

  AttackResult result{*best, best_acc, 0, {best_acc}, {{best_acc}}, 0, 0, 0};
  return result;
}

AttackResult seesaw_attack(const ConstraintGraph& g, const AttackConfig& config) {
  if (g.n() * g.K() > kSeesawMaxDim)
    throw std::invalid_argument("see-saw attack limited to n*K <= " + std::to_string(kSeesawMaxDim));
  if (config.restarts == 0 || config.max_iters == 0)
    throw std::invalid_argument("see-saw attack needs at least one restart and one iteration");

  const bool seeded = config.honest_seed && coloring_count(g.n(), g.K()) <= config.budget;

  std::optional<AttackResult> best;
  std::vector<std::vector<double>> traces;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    std::vector<double> trace;
    std::optional<ProofState> psi;
    ProofState phi = random_state(g.n(), g.K(), split_seed(config.seed, r));
    if (r == 0 && seeded) {
      phi = proper_state(g.n(), g.K(), best_proper_coloring(g));
      psi = phi;
      trace.push_back(pair_acceptance(g, *psi, phi));
    }

    std::size_t iters = 0;
    while (iters < config.max_iters) {
      psi = as_state(g, top_eigenvector(acceptance_form(g, phi, ProofSide::Psi).matrix));
      phi = as_state(g, top_eigenvector(acceptance_form(g, *psi, ProofSide::Phi).matrix));
      ++iters;
      const double acc = pair_acceptance(g, *psi, phi);
      const bool converged = !trace.empty() && acc - trace.back() < config.tol;
      trace.push_back(acc);
      if (converged) break;
    }

    const double final_acc = trace.back();
    if (!best || final_acc > best->acceptance) {
      best.emplace(AttackResult{ProofPair(*psi, phi), final_acc, iters, trace, {}, 0, r, config.seed});
    }
    traces.push_back(std::move(trace));
  }
  best->restart_traces = std::move(traces);
  best->restarts_used = config.restarts;
  return *best;
}

std::vector<SweepRow> gap_sweep(const std::vector<SweepInstance>& instances, const AttackConfig& config) {
  std::vector<SweepRow> rows;
  rows.reserve(instances.size());
  for (const auto& inst : instances) {
    const auto& g = inst.graph;
    const double eta = inst.eta ? *inst.eta : max_satisfied_fraction(g, config.budget).eta;
    AttackConfig cfg = config;
    cfg.seed = split_seed(config.seed, g.n());
    const auto attack = seesaw_attack(g, cfg);

    SweepRow row;
    row.n = g.n();
    row.best_acceptance = attack.acceptance;
    row.measured_gap = 1.0 - attack.acceptance;
    row.restarts = attack.restarts_used;
    row.seed = cfg.seed;
    if (eta > 0.0) {
      const auto report = classify(g, attack.best_pair, eta);
      row.case_id = report.case_id;
      row.theoretical_bound = predicted_rejection_lower_bound(report, g);
    }
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.n < b.n; });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << r.n << ',' << num(r.best_acceptance) << ',' << num(r.measured_gap) << ',' << num(r.theoretical_bound)
        << ',' << r.case_id << ',' << r.restarts << ',' << r.seed << '\n';
  }
  return out.str();
}

double fit_inverse_n(const std::vector<SweepRow>& rows) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& r : rows) {
    const double x = 1.0 / static_cast<double>(r.n);
    num += x * r.measured_gap;
    den += x * x;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace qmalog
