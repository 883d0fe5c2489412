// SPDX-License-Identifier: Apache-2.0
#include "obddres/error.hpp"
#include "obddres/obdd.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace obddres;

namespace {

Clause C(std::initializer_list<int> l) { return Clause::dimacs(l); }

Cnf random_cnf(std::mt19937 &rng, Var vars, int clauses) {
  Cnf phi;
  phi.set_declared_vars(vars);
  for (int k = 0; k < clauses; ++k) {
    std::vector<Literal> lits;
    const int width = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < width; ++i) lits.push_back(Literal(1 + rng() % vars, rng() % 2));
    std::sort(lits.begin(), lits.end());
    bool taut = false;
    for (std::size_t i = 1; i < lits.size(); ++i)
      taut |= lits[i].var() == lits[i - 1].var() && lits[i] != lits[i - 1];
    if (!taut) phi.add(Clause::of(lits));
  }
  return phi;
}

NodeRef build(ObddStore &s, const Cnf &phi, bool reduce_each) {
  NodeRef acc = s.true_ref();
  for (const Clause &c : phi.clauses()) {
    acc = s.apply_and(acc, s.clause_obdd(c));
    if (reduce_each) acc = s.reduce(acc).root;
  }
  return acc;
}

// Calls f with every total assignment over 1..vars.
void for_all(Var vars, const std::function<void(const Assignment &)> &f) {
  std::vector<Var> u;
  for (Var v = 1; v <= vars; ++v) u.push_back(v);
  Assignment a(u);
  for (unsigned bits = 0; bits < (1u << vars); ++bits) {
    for (Var v = 1; v <= vars; ++v) a.set(v, (bits >> (v - 1)) & 1);
    f(a);
  }
}

// Root-to-false path count by plain recursion, no memo.
std::uint64_t naive_false_paths(const ObddStore &s, NodeRef n) {
  if (n.is_false()) return 1;
  if (n.is_true()) return 0;
  return naive_false_paths(s, s.low(n)) + naive_false_paths(s, s.high(n));
}

} // namespace

TEST(VariableOrder, AscendingAndPermutation) {
  const auto asc = VariableOrder::ascending(3);
  EXPECT_TRUE(asc.precedes(1, 2));
  const auto perm = VariableOrder::from_sequence({3, 1, 2});
  EXPECT_TRUE(perm.precedes(3, 1));
  EXPECT_EQ(perm.rank(2), 2u);
  EXPECT_THROW(VariableOrder::from_sequence({1, 1, 2}), Error);
}

TEST(ObddStore, TerminalsAndUniqueTable) {
  ObddStore s(VariableOrder::ascending(3));
  EXPECT_TRUE(s.false_ref().is_false());
  EXPECT_TRUE(s.true_ref().is_true());
  const NodeRef a = s.make_node(2, s.false_ref(), s.true_ref());
  const NodeRef b = s.make_node(2, s.false_ref(), s.true_ref());
  EXPECT_EQ(a, b);
  const std::size_t before = s.num_nodes();
  const NodeRef r = s.make_node(3, s.true_ref(), s.true_ref());
  EXPECT_TRUE(s.is_redundant(r));
  EXPECT_EQ(s.num_nodes(), before + 1);
}

TEST(ObddStore, OrderViolationRejected) {
  ObddStore s(VariableOrder::ascending(3));
  const NodeRef lo = s.make_node(1, s.false_ref(), s.true_ref());
  EXPECT_THROW(s.make_node(2, lo, s.true_ref()), Error);
}

TEST(ObddStore, StoreMismatch) {
  ObddStore s1(VariableOrder::ascending(2)), s2(VariableOrder::ascending(2));
  const NodeRef a = s1.clause_obdd(C({1}));
  try {
    s2.size(a);
    FAIL() << "foreign handle accepted";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::StoreMismatch);
  }
}

TEST(ClauseObdd, SingleFalsePathFalsifyingTheClause) {
  ObddStore s(VariableOrder::ascending(3));
  const NodeRef b = s.clause_obdd(C({1, -2}));
  EXPECT_EQ(s.size(b), 2u);
  const auto paths = s.false_paths(b);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].to_string(), "-1.2");
  EXPECT_EQ(s.clause_obdd(Clause()), s.false_ref());
}

TEST(ApplyAnd, MatchesTruthTableOracle) {
  std::mt19937 rng(21);
  for (int round = 0; round < 60; ++round) {
    const Var vars = 2 + rng() % 5;
    const Cnf phi = random_cnf(rng, vars, 2 + static_cast<int>(rng() % 6));
    ObddStore s(VariableOrder::ascending(vars));
    const NodeRef quasi = build(s, phi, false);
    const NodeRef red = build(s, phi, true);
    for_all(vars, [&](const Assignment &a) {
      EXPECT_EQ(s.eval(quasi, a), eval(phi, a));
      EXPECT_EQ(s.eval(red, a), eval(phi, a));
    });
  }
}

TEST(ApplyAnd, TerminalCases) {
  ObddStore s(VariableOrder::ascending(2));
  const NodeRef x = s.clause_obdd(C({1}));
  EXPECT_EQ(s.apply_and(s.false_ref(), x), s.false_ref());
  EXPECT_EQ(s.apply_and(x, s.true_ref()), x);
  // (x) and (-x): a node on x with both children false, not the terminal.
  const NodeRef both = s.apply_and(x, s.clause_obdd(C({-1})));
  ASSERT_FALSE(both.is_terminal());
  EXPECT_TRUE(s.is_redundant(both));
  EXPECT_EQ(s.reduce(both).root, s.false_ref());
}

TEST(Reduce, CanonicalAcrossConstructions) {
  std::mt19937 rng(8);
  for (int round = 0; round < 40; ++round) {
    const Var vars = 2 + rng() % 5;
    Cnf phi = random_cnf(rng, vars, 3 + static_cast<int>(rng() % 5));
    Cnf shuffled = phi;
    std::vector<Clause> cls(phi.clauses().begin(), phi.clauses().end());
    std::shuffle(cls.begin(), cls.end(), rng);
    shuffled = Cnf(vars, cls);
    ObddStore s(VariableOrder::ascending(vars));
    const NodeRef a = s.reduce(build(s, phi, false)).root;
    const NodeRef b = build(s, shuffled, true);
    EXPECT_TRUE(s.iso(a, b));
    EXPECT_TRUE(s.iso_structural(a, b));
    for (NodeRef n : s.reachable(a)) EXPECT_FALSE(s.is_redundant(n));
  }
}

TEST(Reduce, EventsRecordSizes) {
  ObddStore s(VariableOrder::ascending(3));
  NodeRef b = s.clause_obdd(C({1, -2}));
  b = s.apply_and(b, s.clause_obdd(C({2, 3})));
  b = s.apply_and(b, s.clause_obdd(C({2, -3})));
  EXPECT_EQ(s.size(b), 4u);
  const auto r = s.reduce(b);
  // Eliminating x3 leaves a redundant x2 node, removed next.
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_EQ(r.events[0].var, 3u);
  EXPECT_EQ(r.events[0].size_before, 4u);
  EXPECT_EQ(r.events[0].size_after, 3u);
  EXPECT_EQ(r.events[1].var, 2u);
  EXPECT_EQ(r.events[1].size_after, 2u);
  EXPECT_EQ(s.size(r.root), 2u);
}

TEST(Eliminate, Preconditions) {
  ObddStore s(VariableOrder::ascending(2));
  const NodeRef b = s.clause_obdd(C({1, 2}));
  try {
    s.eliminate(b, b);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(FalsePaths, CountsAgree) {
  std::mt19937 rng(4);
  for (int round = 0; round < 40; ++round) {
    const Var vars = 2 + rng() % 5;
    const Cnf phi = random_cnf(rng, vars, 2 + static_cast<int>(rng() % 6));
    ObddStore s(VariableOrder::ascending(vars));
    const NodeRef b = build(s, phi, false);
    const auto paths = s.false_paths(b);
    EXPECT_EQ(paths.size(), naive_false_paths(s, b));
    EXPECT_EQ(s.count_false_paths(b), paths.size());
    for (NodeRef n : s.reachable(b)) {
      std::uint64_t through = 0;
      for (const auto &tp : s.traced_false_paths(b))
        through += std::count(tp.nodes.begin(), tp.nodes.end(), n);
      EXPECT_EQ(s.count_false_paths_through(b, n), through);
      EXPECT_EQ(s.false_paths(b, n).size(), through);
    }
    // every false path falsifies the function
    for (const auto &p : paths) {
      std::vector<Var> u;
      for (Var v = 1; v <= vars; ++v) u.push_back(v);
      Assignment a(u);
      for (Literal l : p.literals) a.set(l.var(), l.positive());
      EXPECT_FALSE(s.eval(b, a));
    }
  }
}

TEST(FalsePaths, BudgetEnforced) {
  ObddStore s(VariableOrder::ascending(3));
  NodeRef b = s.apply_and(s.clause_obdd(C({1, 2})), s.clause_obdd(C({-1, 3})));
  s.set_path_budget(1);
  try {
    s.false_paths(b);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::PathBudgetExceeded);
  }
}

TEST(Sizes, InnerNodesAndVertices) {
  ObddStore s(VariableOrder::ascending(3));
  const NodeRef b = s.clause_obdd(C({1, -2}));
  EXPECT_EQ(s.size(b), 2u);
  EXPECT_EQ(s.vertex_count(b), 4u);
  EXPECT_EQ(s.size(s.false_ref()), 0u);
  EXPECT_EQ(s.vertex_count(s.false_ref()), 1u);
  EXPECT_EQ(s.support(b), (std::vector<Var>{1, 2}));
}

TEST(Export, DotAndDumpByteExact) {
  ObddStore s(VariableOrder::ascending(3));
  const NodeRef b = s.clause_obdd(C({1, -2}));
  EXPECT_EQ(s.dot(b, "B1"), "digraph B1 {\n"
                            "  f [label=\"false\", shape=box];\n"
                            "  t [label=\"true\", shape=box];\n"
                            "  n3 [label=\"x1\"];\n"
                            "  n2 [label=\"x2\"];\n"
                            "  n3 -> t [style=solid];\n"
                            "  n3 -> n2 [style=dotted];\n"
                            "  n2 -> f [style=solid];\n"
                            "  n2 -> t [style=dotted];\n"
                            "}\n");
  EXPECT_EQ(s.dump(b), "2 2 T F\n3 1 2 T\n");
}
