#include "qmalog/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmalog {

json graph_to_json(const ConstraintGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    json table = json::array();
    for (Color a = 0; a < g.K(); ++a) {
      json row = json::array();
      for (Color b = 0; b < g.K(); ++b) row.push_back(e.allowed[a * g.K() + b] != 0);
      table.push_back(std::move(row));
    }
    edges.push_back({{"u", e.u}, {"v", e.v}, {"allowed", std::move(table)}});
  }
  json out;
  out["n"] = g.n();
  out["K"] = g.K();
  out["d"] = g.d() ? json(*g.d()) : json(nullptr);
  out["conventions"] = kGraphConventions;
  out["edges"] = std::move(edges);
  return out;
}

ConstraintGraph graph_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto K = j.at("K").get<std::size_t>();
    std::optional<std::size_t> d;
    if (j.contains("d") && !j.at("d").is_null()) d = j.at("d").get<std::size_t>();
    ConstraintGraph g(n, K, d);
    for (const auto& e : j.at("edges")) {
      Constraint c;
      c.u = e.at("u").get<std::size_t>();
      c.v = e.at("v").get<std::size_t>();
      for (const auto& row : e.at("allowed"))
        for (const auto& cell : row) c.allowed.push_back(cell.get<bool>() ? 1 : 0);
      g.push_raw(std::move(c));
    }
    return g;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed constraint-graph JSON: ") + ex.what());
  }
}

json state_to_json(const ProofState& s) {
  json amps = json::array();
  for (Eigen::Index k = 0; k < s.amps().size(); ++k) amps.push_back({s.amps()[k].real(), s.amps()[k].imag()});
  return {{"n", s.n()}, {"K", s.K()}, {"amps", std::move(amps)}};
}

ProofState state_from_json(const json& j) {
  std::size_t n = 0;
  std::size_t K = 0;
  Eigen::VectorXcd amps;
  try {
    n = j.at("n").get<std::size_t>();
    K = j.at("K").get<std::size_t>();
    const auto& raw = j.at("amps");
    amps.resize(static_cast<Eigen::Index>(raw.size()));
    for (std::size_t k = 0; k < raw.size(); ++k) {
      const auto& pair = raw[k];
      if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("amplitude must be [re, im]");
      amps[static_cast<Eigen::Index>(k)] = cplx(pair[0].get<double>(), pair[1].get<double>());
    }
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed proof-state JSON: ") + ex.what());
  }
  if (static_cast<std::size_t>(amps.size()) != n * K)
    throw std::invalid_argument("proof-state JSON has " + std::to_string(amps.size()) + " amplitudes, expected n*K");
  if (std::abs(amps.squaredNorm() - 1.0) > 1e-6)
    throw std::invalid_argument("proof-state JSON is too far from unit norm to renormalize");
  return ProofState::normalized(n, K, std::move(amps));
}

json breakdown_to_json(const RejectionBreakdown& r) {
  return {{"eq_reject", r.eq_reject},
          {"cons_reject_a", r.cons_reject_a},
          {"cons_reject_b", r.cons_reject_b},
          {"unif_reject_psi", r.unif_reject_psi},
          {"unif_reject_phi", r.unif_reject_phi},
          {"unif_reject", r.unif_reject},
          {"total_reject", r.total_reject},
          {"acceptance", r.acceptance}};
}

json report_to_json(const CaseReport& r) {
  json out;
  out["sets"] = {{"A", r.set_A}, {"A_prime", r.set_Aprime}, {"B", r.set_B}, {"C", r.set_C}, {"C_prime", r.set_Cprime}};
  out["masses"] = {{"A", r.mass_A},
                   {"Abar_Aprime", r.mass_AbarAprime},
                   {"Abar_Aprimebar_B", r.mass_AbarAprimebarB},
                   {"Abar_Aprimebar_Bbar", r.mass_AbarAprimebarBbar}};
  out["case_id"] = r.case_id;
  out["eta"] = r.eta;
  out["predicted_bound"] = r.predicted_bound ? json(*r.predicted_bound) : json(nullptr);
  out["argmax_colors_psi"] = r.argmax_colors_psi;
  out["argmax_colors_phi"] = r.argmax_colors_phi;
  out["anomalies"] = r.anomalies;
  return out;
}

json attack_to_json(const AttackResult& r) {
  return {{"acceptance", r.acceptance},
          {"measured_gap", 1.0 - r.acceptance},
          {"iterations", r.iterations},
          {"restarts_used", r.restarts_used},
          {"best_restart", r.best_restart},
          {"seed", r.seed},
          {"trace", r.trace},
          {"psi", state_to_json(r.best_pair.psi)},
          {"phi", state_to_json(r.best_pair.phi)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw std::invalid_argument("invalid JSON in " + path.string() + ": " + ex.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << text;
}

}  // namespace qmalog
