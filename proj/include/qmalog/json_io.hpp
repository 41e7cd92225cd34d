#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "qmalog/adversary.hpp"
#include "qmalog/csp.hpp"
#include "qmalog/diagnostics.hpp"
#include "qmalog/proof_state.hpp"
#include "qmalog/verifier.hpp"

namespace qmalog {

using nlohmann::json;

inline constexpr const char* kGraphConventions =
    "edges satisfy u <= v; allowed[a][b] constrains color a of u and color b of v; "
    "a self-loop contributes 1 to the degree of its vertex";

/// Constraint-graph JSON:
///   {"n", "K", "d": int|null, "conventions": str,
///    "edges": [{"u", "v", "allowed": [[bool, ...], ...]}]}
/// Loading keeps edges exactly as written; run validate_graph afterwards.
json graph_to_json(const ConstraintGraph& g);
ConstraintGraph graph_from_json(const json& j);

/// Proof-state JSON: {"n", "K", "amps": [[re, im], ...]} with |i>|j> at i*K + j.
/// Loading renormalizes when the squared norm is within 1e-6 of 1.
json state_to_json(const ProofState& s);
ProofState state_from_json(const json& j);

json breakdown_to_json(const RejectionBreakdown& r);
json report_to_json(const CaseReport& r);
json attack_to_json(const AttackResult& r);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qmalog
