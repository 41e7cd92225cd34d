#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmalog/csp.hpp"
#include "qmalog/proof_state.hpp"

namespace qmalog {

/// Classification of a proof pair into one of the six soundness cases.
///
/// With |alpha_i|^2 the vertex weights of psi and |alpha'_i|^2 those of phi:
///   A  = { i : |alpha_i|^2  < 1/(50 K^3 n) }
///   A' = { i : |alpha'_i|^2 < 1/(100 K^3 n) }
///   B  = { i : |sum_j beta_{i,j}|^2 < 1/(12 K) }
///   C  = { i not in A or A' : argmax_j |beta_{i,j}|^2 != argmax_j |beta'_{i,j}|^2 }
///   C' = (not A and not A') \ C
/// Argmax ties go to the smallest color index.
struct CaseReport {
  std::vector<Vertex> set_A;
  std::vector<Vertex> set_Aprime;
  std::vector<Vertex> set_B;
  std::vector<Vertex> set_C;
  std::vector<Vertex> set_Cprime;

  double mass_A = 0.0;                  ///< sum over A
  double mass_AbarAprime = 0.0;         ///< sum over (not A) and A'
  double mass_AbarAprimebarB = 0.0;     ///< sum over (not A) and (not A') and B
  double mass_AbarAprimebarBbar = 0.0;  ///< sum over (not A) and (not A') and (not B)

  int case_id = 0;
  double eta = 0.0;
  /// Empty only for case 6 on an irregular graph.
  std::optional<double> predicted_bound;

  Coloring argmax_colors_psi;
  Coloring argmax_colors_phi;

  /// Numerical disagreements with the case analysis (e.g. 1/L^2 > 40K in
  /// case 3). Never silently corrected.
  std::vector<std::string> anomalies;
};

/// Smallest j with |row_j|^2 >= 1/K - 1e-12; empty only on a counterexample.
std::optional<Color> lemma41_witness(std::span<const cplx> row);

/// |sum_j row_j|^2 < 1/(12K).
bool lemma42_premise(std::span<const cplx> row);

/// The two smallest indices with |row_j|^2 >= 1/K^4 when the premise holds.
/// Empty when the premise fails or (counterexample) fewer than two exist.
std::optional<std::pair<Color, Color>> lemma42_witnesses(std::span<const cplx> row);

/// Smallest index attaining max_j |row_j|^2.
Color argmax_color(std::span<const cplx> row);

/// Builds the sets and assigns the case in the order 1..6. eta must lie in
/// (0, 1]. Fills predicted_bound whenever it is defined.
CaseReport classify(const ConstraintGraph& g, const ProofPair& pair, double eta);

/// Declared d, otherwise the common degree when every vertex has the same
/// degree (self-loops counting 1); empty for irregular graphs.
std::optional<std::size_t> effective_degree(const ConstraintGraph& g);

/// Lower bound on total rejection for the classified case: one third of the
/// per-test bound of the test that catches that case.
double predicted_rejection_lower_bound(const CaseReport& report, const ConstraintGraph& g);

/// The per-test bound (before the 1/3 test-selection factor).
double per_test_bound(int case_id, std::size_t n, std::size_t K, double eta, std::optional<std::size_t> d);

}  // namespace qmalog
