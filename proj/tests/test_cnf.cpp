// SPDX-License-Identifier: Apache-2.0
#include "obddres/cnf.hpp"
#include "obddres/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace obddres;

namespace {

Clause C(std::initializer_list<int> l) { return Clause::dimacs(l); }

ErrorCode code_of(auto &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Invariant;
}

// Clause truth under a bit-packed assignment of variables 1..k.
bool holds(const Clause &c, unsigned bits) {
  for (Literal l : c.literals())
    if ((((bits >> (l.var() - 1)) & 1u) != 0) == l.positive()) return true;
  return false;
}

} // namespace

TEST(Literal, NegationIsInvolution) {
  const Literal x = Literal::from_dimacs(-7);
  EXPECT_EQ(x.var(), 7u);
  EXPECT_TRUE(x.negative());
  EXPECT_EQ(~~x, x);
  EXPECT_NE(~x, x);
  EXPECT_EQ((~x).to_dimacs(), 7);
}

TEST(Literal, PositiveSortsFirst) {
  EXPECT_LT(Literal::pos(3), Literal::neg(3));
  EXPECT_LT(Literal::neg(2), Literal::pos(3));
}

TEST(Clause, SortedAndDeduplicated) {
  const Clause c = C({3, -1, 3, 2});
  EXPECT_EQ(c.to_dimacs(), (std::vector<int>{-1, 2, 3}));
}

TEST(Clause, TautologyRejected) {
  EXPECT_EQ(code_of([] { C({1, -1}); }), ErrorCode::TautologicalClause);
}

TEST(Clause, EmptyClauseIsBottom) {
  EXPECT_TRUE(Clause().empty());
  EXPECT_EQ(Clause().to_string(), "{}");
  EXPECT_EQ(C({-1, 2}).to_string(), "{-1 2}");
}

TEST(ParseDimacs, RunningExample) {
  const Cnf phi = parse_dimacs("p cnf 3 4\n1 -2 0\n2 3 0\n2 -3 0\n-1 0\n");
  ASSERT_EQ(phi.size(), 4u);
  EXPECT_EQ(phi.clause(1), C({1, -2}));
  EXPECT_EQ(phi.clause(2), C({2, 3}));
  EXPECT_EQ(phi.clause(3), C({2, -3}));
  EXPECT_EQ(phi.clause(4), C({-1}));
  EXPECT_EQ(phi.var_set(), (std::vector<Var>{1, 2, 3}));
}

TEST(ParseDimacs, EmptyFormulaIsTop) {
  const Cnf phi = parse_dimacs("p cnf 0 0\n");
  EXPECT_TRUE(phi.empty());
  EXPECT_TRUE(phi.warnings().empty());
}

TEST(ParseDimacs, TautologyDroppedWithWarning) {
  const Cnf phi = parse_dimacs("p cnf 2 1\n1 -1 2 0\n");
  EXPECT_TRUE(phi.empty());
  ASSERT_EQ(phi.warnings().size(), 1u);
  EXPECT_NE(phi.warnings()[0].find("tautological"), std::string::npos);
}

TEST(ParseDimacs, DuplicateLiteralsMerged) {
  const Cnf phi = parse_dimacs("p cnf 2 1\n2 2 -1 0\n");
  EXPECT_EQ(phi.clause(1), C({-1, 2}));
}

TEST(ParseDimacs, ClausesMaySpanLinesAndCommentsAreKept) {
  const Cnf phi = parse_dimacs("c hello\np cnf 3 2\n1 2\n3 0 -1\n0\n");
  ASSERT_EQ(phi.size(), 2u);
  EXPECT_EQ(phi.clause(1), C({1, 2, 3}));
  EXPECT_EQ(phi.clause(2), C({-1}));
  EXPECT_EQ(phi.comments(), (std::vector<std::string>{"hello"}));
}

TEST(ParseDimacs, ErrorsCarryLineNumbers) {
  struct Case {
    const char *text;
    std::size_t line;
  };
  for (const Case &c : {Case{"p cnf x 1\n1 0\n", 1}, Case{"p cnf 2 1\n1 3 0\n", 2},
                        Case{"p cnf 2 1\n1 2\n", 2}, Case{"1 2 0\n", 1},
                        Case{"p cnf 2 1\n1 a 0\n", 2}, Case{"p cnf 2 2\n1 0\n", 2}}) {
    try {
      parse_dimacs(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << c.text;
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(ParseDimacs, RoundTripIsIdentity) {
  std::mt19937 rng(5);
  for (int round = 0; round < 50; ++round) {
    Cnf phi;
    phi.set_declared_vars(6);
    for (int k = 0; k < 8; ++k) {
      std::vector<Literal> lits;
      for (Var v = 1; v <= 6; ++v)
        if (rng() % 3 == 0) lits.push_back(Literal(v, rng() % 2));
      phi.add(Clause::of(lits));
    }
    EXPECT_EQ(parse_dimacs(write_dimacs(phi)), phi);
  }
}

TEST(WriteDimacs, ByteExact) {
  const Cnf phi(3, {C({1, -2}), C({-1})});
  EXPECT_EQ(write_dimacs(phi), "p cnf 3 2\n1 -2 0\n-1 0\n");
}

TEST(Resolve, Examples) {
  EXPECT_EQ(resolve(C({2, 3}), C({2, -3})), C({2}));
  EXPECT_EQ(resolve(C({1}), C({-1})), Clause());
  EXPECT_EQ(resolve(C({-1, -2, -4}), C({1, -3, -4})), C({-2, -3, -4}));
  EXPECT_EQ(resolve_on_pivot(C({1, -2}), C({2, 3})).pivot, 2u);
}

TEST(Resolve, Errors) {
  EXPECT_EQ(code_of([] { resolve(C({1, 2}), C({-1, -2})); }), ErrorCode::TautologicalResolvent);
  EXPECT_EQ(code_of([] { resolve(C({1, 2}), C({1, 3})); }), ErrorCode::NotResolvable);
}

// Exhaustive over variables 1..5: models of both parents model the resolvent.
TEST(Resolve, SoundOnAllAssignments) {
  std::mt19937 rng(11);
  int checked = 0;
  while (checked < 300) {
    std::vector<Literal> a, b;
    for (Var v = 1; v <= 5; ++v) {
      if (rng() % 2) a.push_back(Literal(v, rng() % 2));
      if (rng() % 2) b.push_back(Literal(v, rng() % 2));
    }
    const Clause c = Clause::of(a), d = Clause::of(b);
    Clause r;
    try {
      r = resolve(c, d);
    } catch (const Error &) {
      continue;
    }
    ++checked;
    for (unsigned bits = 0; bits < 32; ++bits) {
      if (holds(c, bits) && holds(d, bits)) {
        EXPECT_TRUE(holds(r, bits)) << c << " " << d;
      }
    }
  }
}

TEST(Restrict, Definition) {
  const Cnf phi(2, {C({1, -2}), C({2, 3})});
  EXPECT_EQ(restrict(phi, Literal::pos(1)).clauses().size(), 1u);
  EXPECT_EQ(restrict(phi, Literal::pos(1)).clause(1), C({2, 3}));

  const Cnf psi(2, {C({1, -2}), C({-1})});
  const Cnf r = restrict(psi, Literal::pos(1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r.clause(1).empty());

  EXPECT_EQ(restrict(phi, Literal::pos(5)).clauses().size(), phi.size());
}

TEST(Restrict, CoherentWithEval) {
  std::mt19937 rng(3);
  for (int round = 0; round < 40; ++round) {
    Cnf phi;
    for (int k = 0; k < 6; ++k) {
      std::vector<Literal> lits;
      for (Var v = 1; v <= 4; ++v)
        if (rng() % 2) lits.push_back(Literal(v, rng() % 2));
      phi.add(Clause::of(lits));
    }
    const Literal l(1 + rng() % 4, rng() % 2);
    const Cnf r = restrict(phi, l);
    Assignment a({1, 2, 3, 4});
    for (unsigned bits = 0; bits < 16; ++bits) {
      for (Var v = 1; v <= 4; ++v) a.set(v, (bits >> (v - 1)) & 1);
      if (!a.satisfies(l)) continue;
      EXPECT_EQ(eval(phi, a), eval(r, a));
    }
  }
}

TEST(Subsumes, Cases) {
  EXPECT_TRUE(subsumes(C({2}), C({2, 3})));
  EXPECT_FALSE(subsumes(C({2, 3}), C({2})));
  EXPECT_TRUE(subsumes(Clause(), C({1, -4})));
  const Cnf phi(3, {C({2}), C({2, 3}), C({-1})});
  EXPECT_EQ(subsumed_pairs(phi), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}}));
}

TEST(BruteForce, Status) {
  EXPECT_FALSE(brute_force_status(parse_dimacs("p cnf 3 4\n1 -2 0\n2 3 0\n2 -3 0\n-1 0\n"))
                   .satisfiable);
  const auto top = brute_force_status(Cnf());
  EXPECT_TRUE(top.satisfiable);
  ASSERT_TRUE(top.witness.has_value());
  EXPECT_TRUE(top.witness->universe().empty());
  EXPECT_FALSE(brute_force_status(Cnf(1, {C({1}), C({-1})})).satisfiable);

  const Cnf sat(2, {C({1, 2}), C({-1})});
  const auto r = brute_force_status(sat);
  ASSERT_TRUE(r.satisfiable);
  EXPECT_TRUE(eval(sat, *r.witness));
}

TEST(BruteForce, OracleLimit) {
  Cnf big(25, {C({25})});
  for (Var v = 1; v < 25; ++v) big.add(C({static_cast<int>(v)}));
  EXPECT_EQ(code_of([&] { brute_force_status(big); }), ErrorCode::OracleTooLarge);
}

TEST(ClauseDb, IdsAndLookup) {
  ClauseDb db(Cnf(3, {C({2, 3}), C({2, -3}), C({2, 3})}));
  EXPECT_EQ(db.num_axioms(), 3u);
  EXPECT_EQ(db.find(C({2, 3})), ClauseId(1));
  const ClauseId y = db.add_resolvent(C({2}), ClauseId(1), ClauseId(2), 3);
  EXPECT_EQ(y, ClauseId(4));
  EXPECT_FALSE(db.is_axiom(y));
  EXPECT_EQ(db.entry(y).left, ClauseId(1));
  EXPECT_FALSE(db.find(C({1})).has_value());
}
