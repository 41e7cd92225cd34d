#include "qmalog/csp.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace qmalog {

void ConstraintGraph::add_edge(Vertex first, Vertex second, std::vector<std::uint8_t> table) {
  if (first >= n_ || second >= n_) throw std::invalid_argument("edge endpoint out of range");
  if (table.size() != K_ * K_) throw std::invalid_argument("constraint table must have K*K entries");
  if (first > second) {
    std::vector<std::uint8_t> transposed(K_ * K_);
    for (Color a = 0; a < K_; ++a)
      for (Color b = 0; b < K_; ++b) transposed[b * K_ + a] = table[a * K_ + b];
    table = std::move(transposed);
    std::swap(first, second);
  }
  if (has_edge(first, second)) throw std::invalid_argument("duplicate edge");
  edges_.push_back(Constraint{first, second, std::move(table)});
}

std::vector<std::size_t> ConstraintGraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) continue;
    ++deg[e.u];
    if (e.v != e.u) ++deg[e.v];
  }
  return deg;
}

std::size_t ConstraintGraph::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool ConstraintGraph::has_edge(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Constraint& e) { return e.u == a && e.v == b; });
}

std::vector<GraphIssue> validate_graph(const ConstraintGraph& g) {
  std::vector<GraphIssue> issues;
  auto error = [&](std::string msg) { issues.push_back({IssueSeverity::Error, std::move(msg)}); };

  if (g.K() < 2) error("alphabet size K=" + std::to_string(g.K()) + " is below 2");

  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t idx = 0; idx < g.edges().size(); ++idx) {
    const auto& e = g.edges()[idx];
    const std::string tag = "edge " + std::to_string(idx) + " (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")";
    if (e.u >= g.n() || e.v >= g.n()) error(tag + ": endpoint out of range for n=" + std::to_string(g.n()));
    if (e.u > e.v) error(tag + ": endpoints not in canonical order u <= v");
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) error(tag + ": duplicate edge");
    if (e.allowed.size() != g.K() * g.K()) {
      error(tag + ": table has " + std::to_string(e.allowed.size()) + " entries, expected K*K");
      continue;
    }
    if (e.is_self_loop()) {
      for (Color j = 0; j < g.K(); ++j) {
        if (e.allowed[j * g.K() + j] == 0) {
          issues.push_back({IssueSeverity::Warning,
                            tag + ": self-loop rejects diagonal pair (" + std::to_string(j) + "," +
                                std::to_string(j) + "); the verifier never evaluates self-loops"});
          break;
        }
      }
    }
  }

  if (g.d()) {
    const auto deg = g.degrees();
    for (Vertex i = 0; i < g.n(); ++i) {
      if (deg[i] != *g.d()) {
        error("vertex " + std::to_string(i) + " has degree " + std::to_string(deg[i]) +
              " but d=" + std::to_string(*g.d()) + " is declared");
      }
    }
  }
  return issues;
}

bool has_errors(const std::vector<GraphIssue>& issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const GraphIssue& i) { return i.severity == IssueSeverity::Error; });
}

void check_coloring(const ConstraintGraph& g, const Coloring& c) {
  if (c.size() != g.n()) throw std::invalid_argument("coloring length does not match vertex count");
  for (Color col : c)
    if (col >= g.K()) throw std::invalid_argument("coloring entry out of range");
}

std::size_t satisfied_edge_count(const ConstraintGraph& g, const Coloring& c) {
  std::size_t count = 0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& edge = g.edges()[e];
    if (g.allows(e, c[edge.u], c[edge.v])) ++count;
  }
  return count;
}

double satisfied_fraction(const ConstraintGraph& g, const Coloring& c) {
  check_coloring(g, c);
  if (g.edge_count() == 0) throw std::invalid_argument("undefined fraction: graph has no edges");
  return static_cast<double>(satisfied_edge_count(g, c)) / static_cast<double>(g.edge_count());
}

std::uint64_t coloring_count(std::size_t n, std::size_t K) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (K != 0 && total > kMax / K) return kMax;
    total *= K;
  }
  return total;
}

SatStats max_satisfied_fraction(const ConstraintGraph& g, std::uint64_t budget) {
  const auto total = coloring_count(g.n(), g.K());
  if (total > budget) {
    std::ostringstream msg;
    msg << "instance too large for exhaustive oracle: K^n=" << g.K() << "^" << g.n() << " exceeds budget "
        << budget;
    throw BudgetExceeded(msg.str());
  }
  SatStats stats;
  stats.best_coloring.assign(g.n(), 0);
  if (g.edge_count() == 0) {
    stats.satisfied_fraction = 1.0;
    return stats;
  }

  std::size_t best = 0;
  bool first = true;
  const std::size_t m = g.edge_count();
  for_each_coloring(g.n(), g.K(), [&](const Coloring& c) {
    const std::size_t count = satisfied_edge_count(g, c);
    if (first || count > best) {
      best = count;
      stats.best_coloring = c;
      first = false;
    }
    return best < m;
  });
  stats.satisfied_edges = best;
  stats.satisfied_fraction = static_cast<double>(best) / static_cast<double>(m);
  stats.eta = static_cast<double>(m - best) / static_cast<double>(m);
  return stats;
}

std::optional<Coloring> is_satisfiable(const ConstraintGraph& g, std::uint64_t budget) {
  auto stats = max_satisfied_fraction(g, budget);
  if (stats.satisfied_edges == g.edge_count()) return std::move(stats.best_coloring);
  return std::nullopt;
}

}  // namespace qmalog
