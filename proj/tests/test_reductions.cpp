#include "doctest.h"

#include <random>

#include "qmalog/reductions.hpp"
#include "test_support.hpp"

using namespace qmalog;

namespace {

Clause clause(int a, int b, int c) {
  const auto lit = [](int x) { return Literal{static_cast<std::size_t>(std::abs(x) - 1), x < 0}; };
  return {lit(a), lit(b), lit(c)};
}

CnfFormula all_sign_patterns() {
  CnfFormula f{3, {}};
  for (int mask = 0; mask < 8; ++mask)
    f.clauses.push_back(clause(mask & 4 ? -1 : 1, mask & 2 ? -2 : 2, mask & 1 ? -3 : 3));
  return f;
}

// Exhaustive 3-colorability check straight on the simple graph.
bool three_colorable(const SimpleGraph& g) {
  bool found = false;
  for_each_coloring(g.n, 3, [&](const Coloring& c) {
    bool ok = true;
    for (const auto& [a, b] : g.edges) ok = ok && c[a] != c[b];
    found = ok;
    return !ok;
  });
  return found;
}

}  // namespace

TEST_CASE("[reductions] three-coloring") {
  SimpleGraph triangle{3, {{0, 1}, {1, 2}, {0, 2}}};
  const auto g = three_coloring_to_constraint_graph(triangle);
  CHECK(g.K() == 3);
  CHECK(g.edge_count() == 3);
  CHECK_FALSE(g.d().has_value());
  CHECK(*is_satisfiable(g) == Coloring{0, 1, 2});

  SimpleGraph k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  CHECK(max_satisfied_fraction(three_coloring_to_constraint_graph(k4)).eta == doctest::Approx(1.0 / 6.0));

  SimpleGraph single{2, {{0, 1}}};
  CHECK(max_satisfied_fraction(three_coloring_to_constraint_graph(single)).eta == 0.0);

  CHECK_THROWS_AS(three_coloring_to_constraint_graph(SimpleGraph{3, {}}), std::invalid_argument);
  CHECK_THROWS_AS(three_coloring_to_constraint_graph(SimpleGraph{2, {{1, 1}}}), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto sg = random_simple_graph(4 + seed % 5, 0.55, seed);
    if (sg.edges.empty()) continue;
    const auto cg = three_coloring_to_constraint_graph(sg);
    CHECK(is_satisfiable(cg).has_value() == three_colorable(sg));
  }
}

TEST_CASE("[reductions] clause color encoding") {
  const Clause c = clause(1, -2, 3);
  // Color 0 is bit pattern 001: lit1 false, lit2 false, lit3 true.
  const auto first = clause_assignment(c, 0);
  CHECK(first == std::array<bool, 3>{false, true, true});
  const auto last = clause_assignment(c, 6);
  CHECK(last == std::array<bool, 3>{true, false, true});
  for (Color k = 0; k < 7; ++k) {
    const auto v = clause_assignment(c, k);
    CHECK((v[0] || !v[1] || v[2]));
  }
  CHECK_THROWS_AS(clause_assignment(c, 7), std::invalid_argument);
}

TEST_CASE("[reductions] naive 3-SAT reduction") {
  SUBCASE("duplicate clause") {
    CnfFormula f{3, {clause(1, 2, 3), clause(1, 2, 3)}};
    const auto g = threesat_to_constraint_graph_naive(f);
    CHECK(g.n() == 2);
    CHECK(g.K() == 7);
    CHECK(g.edge_count() == 1);
    CHECK(is_satisfiable(g).has_value());
    // Agreement on all three variables means an identity table.
    for (Color a = 0; a < 7; ++a)
      for (Color b = 0; b < 7; ++b) CHECK(g.allows(0, a, b) == (a == b));
  }

  SUBCASE("complementary first literal") {
    CnfFormula f{3, {clause(1, 2, 3), clause(-1, 2, 3)}};
    const auto g = threesat_to_constraint_graph_naive(f);
    const auto w = is_satisfiable(g);
    REQUIRE(w);
    const auto x = clause_assignment(f.clauses[0], (*w)[0]);
    const auto y = clause_assignment(f.clauses[1], (*w)[1]);
    CHECK(x == y);
  }

  SUBCASE("all eight sign patterns") {
    const auto f = all_sign_patterns();
    CHECK_FALSE(formula_satisfiable(f));
    const auto stats = max_satisfied_fraction(threesat_to_constraint_graph_naive(f));
    CHECK(stats.eta == doctest::Approx(0.25).epsilon(1e-12));
  }

  SUBCASE("disjoint clauses give an edgeless graph") {
    CnfFormula f{6, {clause(1, 2, 3), clause(4, 5, 6)}};
    CHECK(threesat_to_constraint_graph_naive(f).edge_count() == 0);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(threesat_to_constraint_graph_naive(CnfFormula{3, {clause(1, 2, 3)}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_formula(CnfFormula{3, {clause(1, 1, 2)}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_formula(CnfFormula{2, {clause(1, 2, 3)}}), std::invalid_argument);
  }

  SUBCASE("completeness for small formulas") {
    std::mt19937_64 rng(11);
    int satisfiable = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t vars = 3 + static_cast<std::size_t>(trial % 4);
      const std::size_t m = 2 + static_cast<std::size_t>(trial % 5);
      CnfFormula f{vars, {}};
      std::uniform_int_distribution<std::size_t> var(0, vars - 1);
      std::bernoulli_distribution sign(0.5);
      while (f.clauses.size() < m) {
        std::array<std::size_t, 3> v{var(rng), var(rng), var(rng)};
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) continue;
        f.clauses.push_back({Literal{v[0], sign(rng)}, Literal{v[1], sign(rng)}, Literal{v[2], sign(rng)}});
      }
      if (!formula_satisfiable(f)) continue;
      ++satisfiable;
      CHECK(is_satisfiable(threesat_to_constraint_graph_naive(f)).has_value());
    }
    CHECK(satisfiable > 100);
  }
}

TEST_CASE("[reductions] DIMACS parsing") {
  const auto f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n");
  CHECK(f.num_vars == 3);
  REQUIRE(f.m() == 2);
  CHECK(f.clauses[0][1].var == 1);
  CHECK(f.clauses[0][1].negated);
  CHECK_FALSE(f.clauses[1][2].negated);

  CHECK(parse_dimacs("p cnf 3 1\n1 2\n3 0\n").m() == 1);

  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 x 3 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p dnf 3 1\n1 2 3 0\n"), std::invalid_argument);
}

TEST_CASE("[reductions] regularize") {
  const auto tri = qmalog::testing::inequality_triangle(3);
  const auto same = regularize(tri, 2);
  CHECK(same.edge_count() == 3);
  CHECK(same.d() == std::optional<std::size_t>(2));

  const auto path = regularize(qmalog::testing::path3(2), 2);
  CHECK(path.edge_count() == 4);
  CHECK(path.has_edge(0, 0));
  CHECK(path.has_edge(2, 2));
  CHECK_FALSE(path.has_edge(1, 1));
  CHECK(path.degrees() == std::vector<std::size_t>{2, 2, 2});
  CHECK(validate_graph(path).empty());

  const auto odd = regularize(qmalog::testing::inequality_triangle(2), 3);
  CHECK(odd.edge_count() == 6);
  CHECK(max_satisfied_fraction(odd).eta == doctest::Approx(1.0 / 6.0));

  CHECK_THROWS_AS(regularize(tri, 1), std::invalid_argument);
  CHECK_THROWS_AS(regularize(tri, 4), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomCspParams params{5, 2, 0.5, 0.5, false};
    const auto g = random_csp(params, seed);
    if (g.edge_count() == 0) continue;
    const auto deg = g.degrees();
    const auto target = g.max_degree();
    bool paddable = true;
    for (auto x : deg) paddable = paddable && target - x <= 1;
    if (!paddable) continue;
    const auto r = regularize(g, target);
    CHECK(is_satisfiable(g).has_value() == is_satisfiable(r).has_value());
    CHECK(max_satisfied_fraction(r).satisfied_edges ==
          max_satisfied_fraction(g).satisfied_edges + (r.edge_count() - g.edge_count()));
  }
}

TEST_CASE("[reductions] generators are deterministic") {
  const auto a = random_simple_graph(8, 0.4, 5);
  const auto b = random_simple_graph(8, 0.4, 5);
  CHECK(a.edges == b.edges);

  RandomCspParams params{6, 3, 0.7, 0.3, true};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_csp(params, seed);
    CHECK_FALSE(has_errors(validate_graph(g)));
    if (g.edge_count() > 0) CHECK(is_satisfiable(g).has_value());
  }

  const auto cyc = cycle_instance(5, 2);
  CHECK(cyc.edge_count() == 5);
  CHECK(max_satisfied_fraction(cyc).eta == doctest::Approx(0.2));
  CHECK_THROWS_AS(cycle_instance(2, 2), std::invalid_argument);
}
