#include "qmalog/proof_state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qmalog {

ProofState::ProofState(std::size_t n, std::size_t K, Eigen::VectorXcd amps)
    : n_(n), K_(K), amps_(std::move(amps)) {
  if (n_ == 0 || K_ == 0) throw std::invalid_argument("proof registers must be nonempty");
  if (static_cast<std::size_t>(amps_.size()) != n_ * K_)
    throw std::invalid_argument("amplitude vector has " + std::to_string(amps_.size()) + " entries, expected n*K=" +
                                std::to_string(n_ * K_));
  const double norm_sq = amps_.squaredNorm();
  if (std::abs(norm_sq - 1.0) > kNormTolerance)
    throw std::invalid_argument("proof state is not normalized (squared norm " + std::to_string(norm_sq) + ")");
}

ProofState ProofState::normalized(std::size_t n, std::size_t K, Eigen::VectorXcd amps) {
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("cannot normalize a zero vector");
  amps /= norm;
  return ProofState(n, K, std::move(amps));
}

Eigen::MatrixXd ProofState::outcome_probabilities() const {
  Eigen::MatrixXd p(n_, K_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < K_; ++j) p(i, j) = std::norm(amp(i, j));
  return p;
}

ProofPair::ProofPair(ProofState psi_, ProofState phi_) : psi(std::move(psi_)), phi(std::move(phi_)) {
  if (psi.n() != phi.n() || psi.K() != phi.K()) throw std::invalid_argument("proof dimensions do not match");
}

BlockDecomposition decompose(const ProofState& s) {
  const auto n = static_cast<Eigen::Index>(s.n());
  const auto K = static_cast<Eigen::Index>(s.K());
  BlockDecomposition out;
  out.alpha.resize(n);
  out.beta = Eigen::MatrixXcd::Zero(n, K);
  out.beta_row_sum.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto block = s.amps().segment(i * K, K);
    const double a = block.norm();
    if (a > kZeroBlockThreshold) {
      out.alpha[i] = a;
      out.beta.row(i) = block.transpose() / a;
    } else {
      out.alpha[i] = 0.0;
      out.beta(i, 0) = 1.0;
    }
    out.beta_row_sum[i] = out.beta.row(i).sum();
  }
  return out;
}

ProofState proper_state(std::size_t n, std::size_t K, const Coloring& c) {
  if (c.size() != n) throw std::invalid_argument("coloring length does not match n");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n * K));
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] >= K) throw std::invalid_argument("coloring entry out of range");
    amps[static_cast<Eigen::Index>(i * K + c[i])] = w;
  }
  return ProofState(n, K, std::move(amps));
}

ProofState random_state(std::size_t n, std::size_t K, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(n * K));
  for (Eigen::Index k = 0; k < amps.size(); ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps[k] = cplx(re, im);
  }
  return ProofState::normalized(n, K, std::move(amps));
}

ProofState basis_state(std::size_t n, std::size_t K, Vertex i, Color j) {
  if (i >= n || j >= K) throw std::invalid_argument("basis index out of range");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n * K));
  amps[static_cast<Eigen::Index>(i * K + j)] = 1.0;
  return ProofState(n, K, std::move(amps));
}

double quantum_distance(const ProofState& a, const ProofState& b) {
  if (a.n() != b.n() || a.K() != b.K()) throw std::invalid_argument("state dimensions do not match");
  const double overlap_sq = std::norm(a.amps().dot(b.amps()));
  return std::sqrt(std::clamp(1.0 - overlap_sq, 0.0, 1.0));
}

double classical_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions have different support sizes");
  auto check = [](std::span<const double> dist) {
    double total = 0.0;
    for (double x : dist) {
      if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("distribution has a negative entry");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("distribution does not sum to 1");
  };
  check(p);
  check(q);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += std::abs(p[k] - q[k]);
  return 0.5 * sum;
}

std::vector<double> basis_distribution(const ProofState& s) {
  std::vector<double> out(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) out[k] = std::norm(s.amps()[static_cast<Eigen::Index>(k)]);
  return out;
}

}  // namespace qmalog
