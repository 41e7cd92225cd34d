#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "qmalog/csp.hpp"
#include "qmalog/proof_state.hpp"

namespace qmalog {

/// Rejection probabilities of the three verifier tests. The verifier picks
/// one test uniformly at random, so total_reject is the mean of eq_reject,
/// (cons_reject_a + cons_reject_b) and unif_reject.
struct RejectionBreakdown {
  double eq_reject = 0.0;
  double cons_reject_a = 0.0;
  double cons_reject_b = 0.0;
  double unif_reject_psi = 0.0;
  double unif_reject_phi = 0.0;
  double unif_reject = 0.0;
  double total_reject = 0.0;
  double acceptance = 1.0;
};

struct ConsistencyRejection {
  double part_a = 0.0;  ///< same vertex, different colors
  double part_b = 0.0;  ///< adjacent vertices, forbidden color pair
};

/// Quantities of the uniformity sub-test on one proof. P_c is the
/// probability of color outcome 0 after F_K; P_v the conditional
/// probability that the vertex outcome after F_n^dagger is nonzero.
struct UniformityReport {
  double P_c = 0.0;
  double P_v = 0.0;
  double L_sq = 0.0;
  std::optional<Eigen::VectorXcd> x_state;  ///< conditional vertex state, set when L_sq > 0
  double reject = 0.0;                      ///< P_c * P_v
};

/// F|j> = (1/sqrt(dim)) sum_k exp(+2 pi i jk/dim) |k>; entry (k, j).
Eigen::MatrixXcd fourier_matrix(std::size_t dim);

/// Swap-test NO probability (1 - |<psi|phi>|^2) / 2.
double equality_reject_prob(const ProofPair& pair);

ConsistencyRejection consistency_reject_prob(const ConstraintGraph& g, const ProofPair& pair);

UniformityReport uniformity_report(const ProofState& s);

/// Rejects if either proof's sub-test rejects: 1 - (1 - p_psi)(1 - p_phi).
double uniformity_reject_prob(const ProofPair& pair);

RejectionBreakdown total_rejection(const ConstraintGraph& g, const ProofPair& pair);

inline constexpr std::size_t kEnumerationMaxDim = 64;

/// Brute-force oracle: consistency by summing over all joint outcomes, the
/// uniformity test by explicit Fourier matrices and conditional states, and
/// the equality test by simulating the Hadamard / controlled-SWAP /
/// Hadamard circuit on ancilla (x) psi (x) phi. Requires n*K <= 64.
RejectionBreakdown rejection_by_enumeration(const ConstraintGraph& g, const ProofPair& pair);

/// Largest absolute field-wise difference between two breakdowns.
double max_abs_difference(const RejectionBreakdown& a, const RejectionBreakdown& b);

/// Throws std::invalid_argument unless the pair's registers match g.
void check_dimensions(const ConstraintGraph& g, const ProofPair& pair);

}  // namespace qmalog
