#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "qmalog/csp.hpp"

namespace qmalog {

/// Plain undirected simple graph (no self-loops, no parallel edges).
struct SimpleGraph {
  std::size_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

struct Literal {
  std::size_t var = 0;
  bool negated = false;
};

using Clause = std::array<Literal, 3>;

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  std::size_t m() const { return clauses.size(); }
};

/// Throws std::invalid_argument unless every clause has three literals over
/// distinct variables below num_vars.
void validate_formula(const CnfFormula& f);

/// Parses DIMACS CNF ("p cnf V C", clause lines terminated by 0, "c" comments).
/// Only 3-literal clauses are accepted.
CnfFormula parse_dimacs(std::string_view text);

bool formula_satisfiable(const CnfFormula& f);

/// K=3 graph coloring as a constraint graph with inequality tables.
ConstraintGraph three_coloring_to_constraint_graph(const SimpleGraph& graph);

/// Value of the satisfying assignment with color index `color` for a clause:
/// colors 0..6 enumerate the truth-bit patterns 1..7 of (lit1, lit2, lit3),
/// lit1 being the most significant bit. Returns the three variable values.
std::array<bool, 3> clause_assignment(const Clause& clause, Color color);

/// One vertex per clause over K=7 colors (the satisfying partial assignments
/// of that clause); clauses sharing a variable are joined by an edge that
/// requires agreement on every shared variable. Satisfiability is preserved;
/// no bound on eta is claimed.
ConstraintGraph threesat_to_constraint_graph_naive(const CnfFormula& f);

/// Pads every vertex to degree `d_target` with one all-true self-loop per
/// deficient vertex and declares d. Since parallel edges are not allowed,
/// a vertex whose deficit exceeds 1 (or that already carries a self-loop)
/// cannot be padded and triggers std::invalid_argument.
ConstraintGraph regularize(const ConstraintGraph& g, std::size_t d_target);

/// Cycle C_n with inequality constraints over K colors.
ConstraintGraph cycle_instance(std::size_t n, std::size_t K);

/// Erdos-Renyi G(n, p), deterministic per seed.
SimpleGraph random_simple_graph(std::size_t n, double edge_prob, std::uint64_t seed);

struct RandomCspParams {
  std::size_t n = 6;
  std::size_t K = 2;
  double edge_prob = 0.5;
  double table_density = 0.5;  ///< probability each color pair is allowed
  bool planted = false;        ///< force one hidden coloring to satisfy every edge
};

/// Random binary CSP on G(n, p) with independently sampled tables.
ConstraintGraph random_csp(const RandomCspParams& params, std::uint64_t seed);

}  // namespace qmalog
