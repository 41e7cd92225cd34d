#include "qmalog/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qmalog/verifier.hpp"

namespace qmalog {
namespace {

constexpr double kLemmaSlack = 1e-12;
constexpr double kCaseMass = 0.3;

std::span<const cplx> row_span(const Eigen::MatrixXcd& beta, Eigen::Index i, std::vector<cplx>& scratch) {
  scratch.resize(static_cast<std::size_t>(beta.cols()));
  for (Eigen::Index j = 0; j < beta.cols(); ++j) scratch[static_cast<std::size_t>(j)] = beta(i, j);
  return scratch;
}

}  // namespace

std::optional<Color> lemma41_witness(std::span<const cplx> row) {
  const double threshold = 1.0 / static_cast<double>(row.size()) - kLemmaSlack;
  for (Color j = 0; j < row.size(); ++j)
    if (std::norm(row[j]) >= threshold) return j;
  return std::nullopt;
}

bool lemma42_premise(std::span<const cplx> row) {
  cplx sum = 0.0;
  for (const auto& x : row) sum += x;
  return std::norm(sum) < 1.0 / (12.0 * static_cast<double>(row.size()));
}

std::optional<std::pair<Color, Color>> lemma42_witnesses(std::span<const cplx> row) {
  if (!lemma42_premise(row)) return std::nullopt;
  const double K = static_cast<double>(row.size());
  const double threshold = 1.0 / (K * K * K * K);
  std::optional<Color> first;
  for (Color j = 0; j < row.size(); ++j) {
    if (std::norm(row[j]) < threshold) continue;
    if (!first) {
      first = j;
    } else {
      return std::pair{*first, j};
    }
  }
  return std::nullopt;
}

Color argmax_color(std::span<const cplx> row) {
  Color best = 0;
  double best_mag = -1.0;
  for (Color j = 0; j < row.size(); ++j) {
    const double mag = std::norm(row[j]);
    if (mag > best_mag) {
      best_mag = mag;
      best = j;
    }
  }
  return best;
}

double per_test_bound(int case_id, std::size_t n_vertices, std::size_t alphabet, double eta,
                      std::optional<std::size_t> d) {
  const double n = static_cast<double>(n_vertices);
  const double K = static_cast<double>(alphabet);
  const double K3 = K * K * K;
  const double K8 = K3 * K3 * K * K;
  switch (case_id) {
    case 1: {
      // Swap test rejects with D^2/2 and D >= D(P, Q) >= (1/2)(0.3 - 1/(100K^3)).
      const double dist = 0.5 * (0.3 - 1.0 / (100.0 * K3));
      return dist * dist / 2.0;
    }
    case 2:
      return 0.3 / (100.0 * K8 * n);
    case 3: {
      const double pc = 0.3 / (12.0 * K * K);
      const double pv = (eta / 200.0) * (eta / 200.0);
      return pc * pv;
    }
    case 4: {
      const double dist = 0.5 * (0.1 * eta) / (100.0 * K3);
      return dist * dist / 2.0;
    }
    case 5:
      return 0.01 * eta / (5000.0 * K8 * n);
    case 6:
      if (!d) throw std::invalid_argument("case 6 bound needs a regular graph");
      return 0.08 * eta * static_cast<double>(*d) / (5000.0 * K8 * n);
    default:
      throw std::invalid_argument("case id must be in 1..6");
  }
}

std::optional<std::size_t> effective_degree(const ConstraintGraph& g) {
  if (g.d()) return g.d();
  const auto deg = g.degrees();
  if (deg.empty() || std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) != deg.end())
    return std::nullopt;
  return deg.front();
}

double predicted_rejection_lower_bound(const CaseReport& report, const ConstraintGraph& g) {
  return per_test_bound(report.case_id, g.n(), g.K(), report.eta, effective_degree(g)) / 3.0;
}

CaseReport classify(const ConstraintGraph& g, const ProofPair& pair, double eta) {
  check_dimensions(g, pair);
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");

  const double n = static_cast<double>(g.n());
  const double K = static_cast<double>(g.K());
  const double K3 = K * K * K;
  const double threshold_A = 1.0 / (50.0 * K3 * n);
  const double threshold_Aprime = 1.0 / (100.0 * K3 * n);
  const double threshold_B = 1.0 / (12.0 * K);

  const auto psi = decompose(pair.psi);
  const auto phi = decompose(pair.phi);

  CaseReport r;
  r.eta = eta;
  std::vector<cplx> scratch;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(g.n()); ++i) {
    const auto v = static_cast<Vertex>(i);
    const double w = psi.alpha[i] * psi.alpha[i];
    const double w_prime = phi.alpha[i] * phi.alpha[i];
    const bool in_A = w < threshold_A;
    const bool in_Aprime = w_prime < threshold_Aprime;
    const bool in_B = std::norm(psi.beta_row_sum[i]) < threshold_B;

    r.argmax_colors_psi.push_back(argmax_color(row_span(psi.beta, i, scratch)));
    r.argmax_colors_phi.push_back(argmax_color(row_span(phi.beta, i, scratch)));

    if (in_A) r.set_A.push_back(v);
    if (in_Aprime) r.set_Aprime.push_back(v);
    if (in_B) r.set_B.push_back(v);

    if (in_A) {
      r.mass_A += w;
    } else if (in_Aprime) {
      r.mass_AbarAprime += w;
    } else {
      if (in_B) {
        r.mass_AbarAprimebarB += w;
      } else {
        r.mass_AbarAprimebarBbar += w;
      }
      if (r.argmax_colors_psi.back() != r.argmax_colors_phi.back()) {
        r.set_C.push_back(v);
      } else {
        r.set_Cprime.push_back(v);
      }
    }
  }

  const double size_A = static_cast<double>(r.set_A.size());
  const double size_Aprime = static_cast<double>(r.set_Aprime.size());
  const double size_C = static_cast<double>(r.set_C.size());
  if (r.mass_AbarAprime >= kCaseMass) {
    r.case_id = 1;
  } else if (r.mass_AbarAprimebarB >= kCaseMass) {
    r.case_id = 2;
  } else if (r.mass_AbarAprimebarBbar >= kCaseMass) {
    if (size_A >= 0.05 * eta * n) {
      r.case_id = 3;
    } else if (size_Aprime >= 0.15 * eta * n) {
      r.case_id = 4;
    } else if (size_C >= 0.01 * eta * n) {
      r.case_id = 5;
    } else {
      r.case_id = 6;
    }
  } else {
    std::ostringstream dump;
    dump << "no case applies: masses A=" << r.mass_A << " AbarA'=" << r.mass_AbarAprime
         << " AbarA'barB=" << r.mass_AbarAprimebarB << " AbarA'barBbar=" << r.mass_AbarAprimebarBbar;
    throw InvariantViolation(dump.str());
  }

  if (r.case_id == 3) {
    const double L_sq = uniformity_report(pair.psi).L_sq;
    if (!(L_sq > 0.0) || 1.0 / L_sq > 40.0 * K) {
      std::ostringstream msg;
      msg << "case 3 expects 1/L^2 <= 40K but L^2=" << L_sq;
      r.anomalies.push_back(msg.str());
    }
  }

  if (r.case_id != 6 || effective_degree(g)) r.predicted_bound = predicted_rejection_lower_bound(r, g);
  return r;
}

}  // namespace qmalog
