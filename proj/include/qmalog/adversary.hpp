#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmalog/csp.hpp"
#include "qmalog/proof_state.hpp"

namespace qmalog {

enum class ProofSide { Psi, Phi };

/// Hermitian M with acceptance(x, fixed) = <x|M|x> for unit x on `side`.
struct AcceptanceForm {
  Eigen::MatrixXcd matrix;
  ProofSide side = ProofSide::Psi;
};

struct AttackConfig {
  std::size_t restarts = 16;
  std::size_t max_iters = 200;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  /// Enumeration budget for the classical seed restart; if K^n exceeds it
  /// every restart starts from a random state.
  std::uint64_t budget = kDefaultBudget;
  bool honest_seed = true;
};

struct AttackResult {
  ProofPair best_pair;
  double acceptance = 0.0;
  std::size_t iterations = 0;           ///< iterations of the winning restart
  std::vector<double> trace;            ///< acceptance per iteration, winning restart
  std::vector<std::vector<double>> restart_traces;
  std::size_t restarts_used = 0;
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kSeesawMaxDim = 512;

AcceptanceForm acceptance_form(const ConstraintGraph& g, const ProofState& fixed, ProofSide side);

/// <x|M|x> for a unit vector x.
double evaluate_form(const AcceptanceForm& form, const Eigen::VectorXcd& x);

/// Unit eigenvector for the largest eigenvalue (dense Hermitian solve).
Eigen::VectorXcd top_eigenvector(const Eigen::MatrixXcd& hermitian, double* eigenvalue = nullptr);

/// Alternating maximization: fix one proof, replace the other with the top
/// eigenvector of its acceptance form, repeat. Restart 0 starts from the
/// best proper pair found by classical_attack_bruteforce when the budget
/// allows; other restarts start phi at random_state(split_seed(seed, r)).
AttackResult seesaw_attack(const ConstraintGraph& g, const AttackConfig& config);

/// Best of: (proper(c), proper(c)) over every coloring c, and every product of
/// computational basis states.
AttackResult classical_attack_bruteforce(const ConstraintGraph& g, std::uint64_t budget = kDefaultBudget);

struct SweepInstance {
  ConstraintGraph graph;
  /// Exact eta; computed with max_satisfied_fraction when absent.
  std::optional<double> eta;
};

struct SweepRow {
  std::size_t n = 0;
  double best_acceptance = 0.0;
  double measured_gap = 0.0;
  double theoretical_bound = 0.0;  ///< 0 for satisfiable instances
  int case_id = 0;                 ///< 0 when eta == 0 (no soundness case)
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
};

/// Runs seesaw_attack on every instance (row seed = split_seed(seed, n)),
/// classifies the winning pair and reports the case bound next to the
/// measured gap. Rows are sorted by n.
std::vector<SweepRow> gap_sweep(const std::vector<SweepInstance>& instances, const AttackConfig& config);

inline constexpr const char* kSweepCsvHeader = "n,best_acceptance,measured_gap,theoretical_bound,case_id,restarts,seed";

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Least-squares c in gap ~ c / n.
double fit_inverse_n(const std::vector<SweepRow>& rows);

}  // namespace qmalog
