#include "qmalog/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qmalog {
namespace {

using Index = Eigen::Index;

constexpr double kEmptyColorOutcome = 1e-15;

RejectionBreakdown assemble(double eq, ConsistencyRejection cons, double unif_psi, double unif_phi) {
  RejectionBreakdown r;
  r.eq_reject = eq;
  r.cons_reject_a = cons.part_a;
  r.cons_reject_b = cons.part_b;
  r.unif_reject_psi = unif_psi;
  r.unif_reject_phi = unif_phi;
  r.unif_reject = 1.0 - (1.0 - unif_psi) * (1.0 - unif_phi);
  r.total_reject = (r.eq_reject + r.cons_reject_a + r.cons_reject_b + r.unif_reject) / 3.0;
  r.acceptance = 1.0 - r.total_reject;
  return r;
}

}  // namespace

void check_dimensions(const ConstraintGraph& g, const ProofPair& pair) {
  if (pair.n() != g.n() || pair.K() != g.K())
    throw std::invalid_argument("proof dimensions (n=" + std::to_string(pair.n()) + ", K=" + std::to_string(pair.K()) +
                                ") do not match instance (n=" + std::to_string(g.n()) +
                                ", K=" + std::to_string(g.K()) + ")");
}

Eigen::MatrixXcd fourier_matrix(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("Fourier dimension must be positive");
  const auto d = static_cast<Index>(dim);
  Eigen::MatrixXcd F(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index k = 0; k < d; ++k) {
    for (Index j = 0; j < d; ++j) {
      // Reduce jk mod dim first so large products keep full phase accuracy.
      const auto r = static_cast<double>((j * k) % d);
      F(k, j) = std::polar(scale, 2.0 * std::numbers::pi * r / static_cast<double>(dim));
    }
  }
  return F;
}

double equality_reject_prob(const ProofPair& pair) {
  const double overlap_sq = std::norm(pair.psi.amps().dot(pair.phi.amps()));
  return std::clamp((1.0 - overlap_sq) / 2.0, 0.0, 0.5);
}

ConsistencyRejection consistency_reject_prob(const ConstraintGraph& g, const ProofPair& pair) {
  check_dimensions(g, pair);
  const Eigen::MatrixXd P = pair.psi.outcome_probabilities();
  const Eigen::MatrixXd Q = pair.phi.outcome_probabilities();
  const std::size_t K = g.K();

  ConsistencyRejection out;
  for (Index i = 0; i < P.rows(); ++i) {
    const double same_color = P.row(i).dot(Q.row(i));
    out.part_a += P.row(i).sum() * Q.row(i).sum() - same_color;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    if (edge.is_self_loop()) continue;
    const auto u = static_cast<Index>(edge.u);
    const auto v = static_cast<Index>(edge.v);
    for (Color a = 0; a < K; ++a) {
      for (Color b = 0; b < K; ++b) {
        if (g.allows(e, a, b)) continue;
        const auto ia = static_cast<Index>(a);
        const auto ib = static_cast<Index>(b);
        out.part_b += P(u, ia) * Q(v, ib) + P(v, ib) * Q(u, ia);
      }
    }
  }
  out.part_a = std::clamp(out.part_a, 0.0, 1.0);
  out.part_b = std::clamp(out.part_b, 0.0, 1.0);
  return out;
}

UniformityReport uniformity_report(const ProofState& s) {
  const auto n = static_cast<Index>(s.n());
  const auto K = static_cast<Index>(s.K());
  // alpha_i beta_i is the sum of block i's amplitudes.
  Eigen::VectorXcd block_sums(n);
  for (Index i = 0; i < n; ++i) block_sums[i] = s.amps().segment(i * K, K).sum();

  UniformityReport r;
  r.L_sq = block_sums.squaredNorm();
  r.P_c = r.L_sq / static_cast<double>(K);
  if (r.L_sq <= kEmptyColorOutcome) return r;

  const double L = std::sqrt(r.L_sq);
  r.x_state = block_sums / L;
  const double overlap_uniform = std::norm(block_sums.sum()) / (static_cast<double>(n) * r.L_sq);
  r.P_v = std::clamp(1.0 - overlap_uniform, 0.0, 1.0);
  r.reject = r.P_c * r.P_v;
  return r;
}

double uniformity_reject_prob(const ProofPair& pair) {
  const double p_psi = uniformity_report(pair.psi).reject;
  const double p_phi = uniformity_report(pair.phi).reject;
  return 1.0 - (1.0 - p_psi) * (1.0 - p_phi);
}

RejectionBreakdown total_rejection(const ConstraintGraph& g, const ProofPair& pair) {
  check_dimensions(g, pair);
  return assemble(equality_reject_prob(pair), consistency_reject_prob(g, pair), uniformity_report(pair.psi).reject,
                  uniformity_report(pair.phi).reject);
}

namespace {

// Consistency test decided outcome by outcome from an edge lookup table.
double enumerate_consistency(const ConstraintGraph& g, const ProofPair& pair, bool same_vertex_part) {
  std::map<std::pair<Vertex, Vertex>, std::size_t> edge_index;
  for (std::size_t e = 0; e < g.edge_count(); ++e) edge_index[{g.edges()[e].u, g.edges()[e].v}] = e;

  const std::size_t n = g.n();
  const std::size_t K = g.K();
  double reject = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    for (Color j = 0; j < K; ++j) {
      const double p = std::norm(pair.psi.amp(i, j));
      for (Vertex i2 = 0; i2 < n; ++i2) {
        for (Color j2 = 0; j2 < K; ++j2) {
          const double q = std::norm(pair.phi.amp(i2, j2));
          bool rejects = false;
          if (i == i2) {
            rejects = same_vertex_part && j != j2;
          } else if (!same_vertex_part) {
            const bool forward = i < i2;
            const auto it = edge_index.find(forward ? std::pair{i, i2} : std::pair{i2, i});
            if (it != edge_index.end()) {
              const Color first = forward ? j : j2;
              const Color second = forward ? j2 : j;
              rejects = !g.allows(it->second, first, second);
            }
          }
          if (rejects) reject += p * q;
        }
      }
    }
  }
  return reject;
}

// Measures the color register after F_K; on outcome 0 applies F_n^dagger to
// the renormalized vertex state and rejects on a nonzero vertex outcome.
double enumerate_uniformity(const ProofState& s) {
  const auto n = static_cast<Index>(s.n());
  const auto K = static_cast<Index>(s.K());
  const Eigen::MatrixXcd FK = fourier_matrix(s.K());
  const Eigen::MatrixXcd Fn = fourier_matrix(s.n());

  // Row i of `grid` is the color-register amplitude vector of vertex i.
  Eigen::MatrixXcd grid(n, K);
  for (Index i = 0; i < n; ++i) grid.row(i) = s.amps().segment(i * K, K).transpose();
  const Eigen::MatrixXcd transformed = grid * FK.transpose();

  double reject = 0.0;
  for (Index k = 0; k < K; ++k) {
    const Eigen::VectorXcd vertex_part = transformed.col(k);
    const double prob = vertex_part.squaredNorm();
    if (k != 0 || prob <= kEmptyColorOutcome) continue;
    const Eigen::VectorXcd conditional = vertex_part / std::sqrt(prob);
    const Eigen::VectorXcd after = Fn.adjoint() * conditional;
    const double zero_mass = std::norm(after[0]);
    reject += prob * (1.0 - zero_mass);
  }
  return std::clamp(reject, 0.0, 1.0);
}

// Swap test on |0>|psi>|phi> with state index anc*D*D + x*D + y.
double enumerate_swap_test(const ProofPair& pair) {
  const auto D = static_cast<Index>(pair.psi.dim());
  const Index half = D * D;
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(2 * half);
  for (Index x = 0; x < D; ++x)
    for (Index y = 0; y < D; ++y) state[x * D + y] = pair.psi.amps()[x] * pair.phi.amps()[y];

  Eigen::Matrix2cd H;
  H << 1.0, 1.0, 1.0, -1.0;
  H /= std::sqrt(2.0);
  auto apply_ancilla_gate = [&](const Eigen::Matrix2cd& gate) {
    Eigen::MatrixXcd halves(half, 2);
    halves.col(0) = state.head(half);
    halves.col(1) = state.tail(half);
    const Eigen::MatrixXcd out = halves * gate.transpose();
    state.head(half) = out.col(0);
    state.tail(half) = out.col(1);
  };

  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, Index> swap(half);
  for (Index x = 0; x < D; ++x)
    for (Index y = 0; y < D; ++y) swap.indices()[x * D + y] = y * D + x;

  apply_ancilla_gate(H);
  state.tail(half) = swap * state.tail(half);
  apply_ancilla_gate(H);
  return state.tail(half).squaredNorm();
}

}  // namespace

RejectionBreakdown rejection_by_enumeration(const ConstraintGraph& g, const ProofPair& pair) {
  check_dimensions(g, pair);
  if (pair.psi.dim() > kEnumerationMaxDim)
    throw std::invalid_argument("enumeration oracle limited to n*K <= " + std::to_string(kEnumerationMaxDim));
  ConsistencyRejection cons;
  cons.part_a = enumerate_consistency(g, pair, true);
  cons.part_b = enumerate_consistency(g, pair, false);
  return assemble(enumerate_swap_test(pair), cons, enumerate_uniformity(pair.psi), enumerate_uniformity(pair.phi));
}

double max_abs_difference(const RejectionBreakdown& a, const RejectionBreakdown& b) {
  const double diffs[] = {
      std::abs(a.eq_reject - b.eq_reject),         std::abs(a.cons_reject_a - b.cons_reject_a),
      std::abs(a.cons_reject_b - b.cons_reject_b), std::abs(a.unif_reject_psi - b.unif_reject_psi),
      std::abs(a.unif_reject_phi - b.unif_reject_phi), std::abs(a.unif_reject - b.unif_reject),
      std::abs(a.total_reject - b.total_reject),   std::abs(a.acceptance - b.acceptance)};
  return *std::max_element(std::begin(diffs), std::end(diffs));
}

}  // namespace qmalog
