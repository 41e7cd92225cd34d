#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "qmalog/csp.hpp"

namespace qmalog {

using cplx = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kZeroBlockThreshold = 1e-12;

/// Pure state on the vertex register (dimension n) tensored with the color
/// register (dimension K). Amplitude of |i>|j> lives at index i*K + j.
class ProofState {
 public:
  /// Rejects amplitude vectors whose squared norm is off by more than
  /// kNormTolerance.
  ProofState(std::size_t n, std::size_t K, Eigen::VectorXcd amps);

  /// Scales a nonzero vector to unit norm. Used by file loaders only.
  static ProofState normalized(std::size_t n, std::size_t K, Eigen::VectorXcd amps);

  std::size_t n() const { return n_; }
  std::size_t K() const { return K_; }
  std::size_t dim() const { return n_ * K_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  cplx amp(Vertex i, Color j) const { return amps_[static_cast<Eigen::Index>(i * K_ + j)]; }

  /// |amp(i, j)|^2 arranged as an n x K matrix.
  Eigen::MatrixXd outcome_probabilities() const;

 private:
  std::size_t n_;
  std::size_t K_;
  Eigen::VectorXcd amps_;
};

/// Block form sum_i alpha_i |i> sum_j beta_{i,j} |j> with alpha_i real and
/// non-negative; per-vertex phases live in beta.
struct BlockDecomposition {
  Eigen::VectorXd alpha;
  Eigen::MatrixXcd beta;
  Eigen::VectorXcd beta_row_sum;
};

/// Two unentangled proofs of matching shape.
struct ProofPair {
  ProofPair(ProofState psi_, ProofState phi_);

  ProofState psi;
  ProofState phi;

  std::size_t n() const { return psi.n(); }
  std::size_t K() const { return psi.K(); }
};

BlockDecomposition decompose(const ProofState& s);

/// (1/sqrt(n)) sum_i |i>|c[i]>.
ProofState proper_state(std::size_t n, std::size_t K, const Coloring& c);

/// Normalized i.i.d. standard complex Gaussian amplitudes.
ProofState random_state(std::size_t n, std::size_t K, std::uint64_t seed);

ProofState basis_state(std::size_t n, std::size_t K, Vertex i, Color j);

double quantum_distance(const ProofState& a, const ProofState& b);

/// Total variation distance between two distributions of equal support.
double classical_distance(std::span<const double> p, std::span<const double> q);

/// Computational-basis outcome distribution over all n*K outcomes.
std::vector<double> basis_distribution(const ProofState& s);

}  // namespace qmalog
