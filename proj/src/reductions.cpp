#include "qmalog/reductions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmalog {

void validate_formula(const CnfFormula& f) {
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& clause = f.clauses[c];
    for (const auto& lit : clause)
      if (lit.var >= f.num_vars)
        throw std::invalid_argument("clause " + std::to_string(c) + " uses variable out of range");
    if (clause[0].var == clause[1].var || clause[0].var == clause[2].var || clause[1].var == clause[2].var)
      throw std::invalid_argument("clause " + std::to_string(c) + " repeats a variable");
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  CnfFormula f;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<long> pending;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf")
        throw std::invalid_argument("malformed DIMACS header");
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("clause before DIMACS header");
    std::istringstream all(line);
    long lit = 0;
    while (all >> lit) {
      if (lit != 0) {
        pending.push_back(lit);
        continue;
      }
      if (pending.size() != 3)
        throw std::invalid_argument("only 3-literal clauses are supported, got " + std::to_string(pending.size()));
      Clause clause;
      for (std::size_t k = 0; k < 3; ++k) {
        const long v = pending[k] < 0 ? -pending[k] : pending[k];
        clause[k] = Literal{static_cast<std::size_t>(v - 1), pending[k] < 0};
      }
      f.clauses.push_back(clause);
      pending.clear();
    }
    if (all.fail() && !all.eof()) throw std::invalid_argument("non-integer token in clause line");
  }
  if (!header) throw std::invalid_argument("missing DIMACS header");
  if (!pending.empty()) throw std::invalid_argument("unterminated clause");
  if (f.clauses.size() != declared_clauses)
    throw std::invalid_argument("clause count does not match DIMACS header");
  validate_formula(f);
  return f;
}

bool formula_satisfiable(const CnfFormula& f) {
  if (f.num_vars >= 32) throw BudgetExceeded("formula has too many variables for exhaustive check");
  const std::uint64_t total = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const bool ok = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](const Literal& lit) {
        const bool value = (bits >> lit.var) & 1U;
        return value != lit.negated;
      });
    });
    if (ok) return true;
  }
  return false;
}

ConstraintGraph three_coloring_to_constraint_graph(const SimpleGraph& graph) {
  if (graph.edges.empty()) throw std::invalid_argument("input graph has no edges");
  ConstraintGraph g(graph.n, 3);
  for (const auto& [a, b] : graph.edges) {
    if (a == b) throw std::invalid_argument("input graph must not have self-loops");
    g.add_edge_if(a, b, [](Color x, Color y) { return x != y; });
  }
  return g;
}

std::array<bool, 3> clause_assignment(const Clause& clause, Color color) {
  if (color >= 7) throw std::invalid_argument("clause color must be in 0..6");
  const unsigned bits = static_cast<unsigned>(color) + 1;
  std::array<bool, 3> values{};
  for (std::size_t k = 0; k < 3; ++k) {
    const bool literal_true = (bits >> (2 - k)) & 1U;
    values[k] = literal_true != clause[k].negated;
  }
  return values;
}

ConstraintGraph threesat_to_constraint_graph_naive(const CnfFormula& f) {
  validate_formula(f);
  if (f.m() < 2) throw std::invalid_argument("naive reduction needs at least 2 clauses");
  constexpr std::size_t kColors = 7;
  ConstraintGraph g(f.m(), kColors);
  for (std::size_t c1 = 0; c1 < f.m(); ++c1) {
    for (std::size_t c2 = c1 + 1; c2 < f.m(); ++c2) {
      const auto& x = f.clauses[c1];
      const auto& y = f.clauses[c2];
      std::vector<std::pair<std::size_t, std::size_t>> shared;
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q)
          if (x[p].var == y[q].var) shared.emplace_back(p, q);
      if (shared.empty()) continue;
      g.add_edge_if(c1, c2, [&](Color a, Color b) {
        const auto va = clause_assignment(x, a);
        const auto vb = clause_assignment(y, b);
        return std::all_of(shared.begin(), shared.end(),
                           [&](const auto& pq) { return va[pq.first] == vb[pq.second]; });
      });
    }
  }
  return g;
}

ConstraintGraph regularize(const ConstraintGraph& g, std::size_t d_target) {
  const auto deg = g.degrees();
  const std::size_t max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  if (d_target < max_deg)
    throw std::invalid_argument("d_target " + std::to_string(d_target) + " is below the max degree " +
                                std::to_string(max_deg));
  ConstraintGraph out = g;
  for (Vertex i = 0; i < g.n(); ++i) {
    const std::size_t deficit = d_target - deg[i];
    if (deficit == 0) continue;
    if (deficit > 1 || g.has_edge(i, i))
      throw std::invalid_argument("vertex " + std::to_string(i) + " needs " + std::to_string(deficit) +
                                  " more incident edges but can take at most one new self-loop");
    out.add_edge_if(i, i, [](Color, Color) { return true; });
  }
  out.set_d(d_target);
  return out;
}

ConstraintGraph cycle_instance(std::size_t n, std::size_t K) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  ConstraintGraph g(n, K);
  for (Vertex i = 0; i < n; ++i) g.add_edge_if(i, (i + 1) % n, [](Color a, Color b) { return a != b; });
  return g;
}

SimpleGraph random_simple_graph(std::size_t n, double edge_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  SimpleGraph out;
  out.n = n;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) out.edges.emplace_back(a, b);
  return out;
}

ConstraintGraph random_csp(const RandomCspParams& params, std::uint64_t seed) {
  if (params.K == 0) throw std::invalid_argument("alphabet must be nonempty");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge_coin(params.edge_prob);
  std::bernoulli_distribution table_coin(params.table_density);
  std::uniform_int_distribution<Color> color(0, params.K - 1);

  Coloring hidden(params.n, 0);
  if (params.planted)
    for (auto& c : hidden) c = color(rng);

  ConstraintGraph g(params.n, params.K);
  for (Vertex a = 0; a < params.n; ++a) {
    for (Vertex b = a + 1; b < params.n; ++b) {
      if (!edge_coin(rng)) continue;
      std::vector<std::uint8_t> table(params.K * params.K);
      for (auto& cell : table) cell = table_coin(rng) ? 1 : 0;
      if (params.planted) table[hidden[a] * params.K + hidden[b]] = 1;
      g.add_edge(a, b, std::move(table));
    }
  }
  return g;
}

}  // namespace qmalog
