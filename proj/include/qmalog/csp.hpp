#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmalog {

using Vertex = std::size_t;
using Color = std::size_t;
using Coloring = std::vector<Color>;

/// Raised when an exhaustive routine would exceed its enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a mathematical invariant the library relies on fails to hold
/// numerically (e.g. no soundness case applies to a normalized pair).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Binary constraint on an edge {u, v} with u <= v. The table is K*K,
/// row-major, and the first argument is always the color of u.
struct Constraint {
  Vertex u = 0;
  Vertex v = 0;
  std::vector<std::uint8_t> allowed;

  bool is_self_loop() const { return u == v; }
};

/// Undirected constraint graph over a K-letter alphabet. Self-loops are
/// permitted and contribute 1 to the degree of their vertex.
class ConstraintGraph {
 public:
  ConstraintGraph() = default;
  ConstraintGraph(std::size_t n, std::size_t K, std::optional<std::size_t> d = std::nullopt)
      : n_(n), K_(K), d_(d) {}

  std::size_t n() const { return n_; }
  std::size_t K() const { return K_; }
  const std::optional<std::size_t>& d() const { return d_; }
  void set_d(std::optional<std::size_t> d) { d_ = d; }

  const std::vector<Constraint>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Appends an edge, canonicalizing to u <= v. When the endpoints are given
  /// as (v, u) with v > u the table is transposed so it still reads
  /// R(color of smaller, color of larger). `table` has K*K entries with
  /// table[a*K+b] = R(color of first, color of second).
  void add_edge(Vertex first, Vertex second, std::vector<std::uint8_t> table);

  /// Appends a constraint whose table is given by a predicate on (a, b).
  template <typename Pred>
  void add_edge_if(Vertex first, Vertex second, Pred allowed) {
    std::vector<std::uint8_t> table(K_ * K_);
    for (Color a = 0; a < K_; ++a)
      for (Color b = 0; b < K_; ++b) table[a * K_ + b] = allowed(a, b) ? 1 : 0;
    add_edge(first, second, std::move(table));
  }

  /// R_e(a, b) for edge index e, a the color of the smaller endpoint.
  bool allows(std::size_t e, Color a, Color b) const {
    return edges_[e].allowed[a * K_ + b] != 0;
  }

  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;
  bool has_edge(Vertex a, Vertex b) const;

  /// Raw append without canonicalization; used by loaders so that
  /// validate_graph can report malformed input instead of masking it.
  void push_raw(Constraint c) { edges_.push_back(std::move(c)); }

 private:
  std::size_t n_ = 0;
  std::size_t K_ = 2;
  std::optional<std::size_t> d_;
  std::vector<Constraint> edges_;
};

enum class IssueSeverity { Error, Warning };

struct GraphIssue {
  IssueSeverity severity = IssueSeverity::Error;
  std::string message;
};

struct SatStats {
  double satisfied_fraction = 0.0;
  std::size_t satisfied_edges = 0;
  Coloring best_coloring;
  double eta = 0.0;
};

/// Lists every structural problem of `g`. Errors are invariant violations;
/// warnings flag self-loops whose tables reject a diagonal pair (j, j), which
/// the consistency test never evaluates.
std::vector<GraphIssue> validate_graph(const ConstraintGraph& g);
bool has_errors(const std::vector<GraphIssue>& issues);

/// Throws std::invalid_argument if `c` is not a coloring of `g`.
void check_coloring(const ConstraintGraph& g, const Coloring& c);

std::size_t satisfied_edge_count(const ConstraintGraph& g, const Coloring& c);

/// Fraction of edges whose constraint holds under `c`. Self-loops are
/// evaluated as R(c[u], c[u]). Throws on an edgeless graph.
double satisfied_fraction(const ConstraintGraph& g, const Coloring& c);

/// K^n saturated at UINT64_MAX.
std::uint64_t coloring_count(std::size_t n, std::size_t K);

/// Exhaustive Max-CSP oracle. Among maximizers the lexicographically
/// smallest coloring is returned. An edgeless graph reports fraction 1 with
/// the all-zero coloring.
SatStats max_satisfied_fraction(const ConstraintGraph& g, std::uint64_t budget = kDefaultBudget);

std::optional<Coloring> is_satisfiable(const ConstraintGraph& g, std::uint64_t budget = kDefaultBudget);

/// Visits every coloring of n vertices over K colors in lexicographic order.
/// Stops early if `visit` returns false.
template <typename Visit>
void for_each_coloring(std::size_t n, std::size_t K, Visit visit) {
  Coloring c(n, 0);
  while (true) {
    if (!visit(static_cast<const Coloring&>(c))) return;
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++c[pos] < K) break;
      c[pos] = 0;
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace qmalog
