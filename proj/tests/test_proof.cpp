// SPDX-License-Identifier: Apache-2.0
#include "obddres/error.hpp"
#include "obddres/families.hpp"
#include "obddres/proof.hpp"

#include <gtest/gtest.h>

using namespace obddres;

namespace {

Clause C(std::initializer_list<int> l) { return Clause::dimacs(l); }

ResolutionProof running_proof() {
  ResolutionProof p;
  const Cnf phi = fixture("running-example");
  for (const Clause &c : phi.clauses()) p.add_axiom(c);
  p.add_resolvent(C({2}), 3, 2, 3);
  p.add_resolvent(C({1}), 1, 5, 2);
  p.add_resolvent(Clause(), 4, 6, 1);
  return p;
}

const char *kRunningTrace = "1 1 -2 0 0\n2 2 3 0 0\n3 2 -3 0 0\n4 -1 0 0\n"
                            "5 2 0 3 2 0\n6 1 0 1 5 0\n7 0 4 6 0\n";

// Models of both parents model the child, over the step's variables.
bool semantically_sound(const Clause &a, const Clause &b, const Clause &r) {
  std::vector<Var> vars;
  for (const Clause *c : {&a, &b, &r})
    for (Var v : c->variables()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  Assignment asg(vars);
  for (unsigned bits = 0; bits < (1u << vars.size()); ++bits) {
    for (std::size_t i = 0; i < vars.size(); ++i) asg.set(vars[i], (bits >> i) & 1);
    if (eval(a, asg) && eval(b, asg) && !eval(r, asg)) return false;
  }
  return true;
}

} // namespace

TEST(Check, RunningExampleOk) {
  const auto v = check(fixture("running-example"), running_proof());
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.to_string(), "OK");
}

TEST(Check, AlteredResolvent) {
  ResolutionProof p = running_proof();
  p.steps()[5].clause = C({-2});
  const auto v = check(fixture("running-example"), p);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failed_step, 6u);
  EXPECT_EQ(v.reason, "not a valid resolvent");
  EXPECT_EQ(v.to_string(), "FAIL step 6: not a valid resolvent");
}

TEST(Check, FinalClauseNotEmpty) {
  ResolutionProof p = running_proof();
  p.steps().pop_back();
  const auto v = check(fixture("running-example"), p);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.reason, "final clause not empty");
}

TEST(Check, RejectsEachKindOfBadStep) {
  const Cnf phi = fixture("running-example");
  {
    ResolutionProof p = running_proof();
    p.steps()[0].clause = C({1, 2});
    EXPECT_EQ(check(phi, p).reason, "axiom not in formula");
  }
  {
    ResolutionProof p = running_proof();
    p.steps()[4].parents = std::make_pair(3u, 9u);
    EXPECT_EQ(check(phi, p).reason, "parent not found");
  }
  {
    ResolutionProof p;
    p.add_axiom(C({1, -2}));
    p.add_axiom(C({-1, 2}));
    p.add_resolvent(Clause(), 1, 2, 1);
    EXPECT_EQ(check(Cnf(2, {C({1, -2}), C({-1, 2})}), p).reason, "tautological resolvent");
  }
  {
    ResolutionProof p;
    p.add_axiom(C({1}));
    p.add_axiom(C({2}));
    p.add_resolvent(Clause(), 1, 2, 1);
    EXPECT_EQ(check(Cnf(2, {C({1}), C({2})}), p).reason, "not resolvable");
  }
  {
    ResolutionProof p = running_proof();
    p.steps()[4].pivot = 2;
    EXPECT_EQ(check(phi, p).reason, "wrong pivot");
  }
  EXPECT_EQ(check(phi, ResolutionProof()).reason, "empty proof");
}

TEST(Check, NoForwardReferences) {
  ResolutionProof p = running_proof();
  p.steps()[4].parents = std::make_pair(3u, 6u);
  EXPECT_FALSE(check(fixture("running-example"), p).ok);
}

TEST(Trace, WriteIsByteExact) { EXPECT_EQ(write_trace(running_proof()), kRunningTrace); }

TEST(Trace, RoundTrip) {
  const ResolutionProof p = read_trace(kRunningTrace);
  ASSERT_EQ(p.size(), 7u);
  EXPECT_EQ(p.steps()[6].parents, std::make_pair(4u, 6u));
  EXPECT_EQ(p.steps()[4].pivot, 3u);
  EXPECT_EQ(write_trace(p), kRunningTrace);
  EXPECT_TRUE(check(fixture("running-example"), p).ok);
}

TEST(Trace, ParseErrors) {
  struct Case {
    const char *text;
    std::size_t line;
  };
  for (const Case &c : {Case{"1 1 0 0\n2 0 1 99 0\n", 2}, Case{"1 1 0 0\n1 2 0 0\n", 2},
                        Case{"2 1 0 0\n1 2 0 0\n", 2}, Case{"1 1 0\n", 1},
                        Case{"1 x 0 0\n", 1}, Case{"0 1 0 0\n", 1},
                        Case{"1 1 -1 0 0\n", 1}, Case{"1 1 0 0\n2 1 0 1 0\n", 2}}) {
    try {
      read_trace(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << c.text;
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(Check, VerdictAgreesWithSemantics) {
  // every step the checker accepts is semantically sound
  const Cnf phi = gen_php(2);
  ResolutionProof p;
  for (const Clause &c : phi.clauses()) p.add_axiom(c);
  const auto &steps = p.steps();
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      try {
        const auto r = resolve_on_pivot(steps[i].clause, steps[j].clause);
        ResolutionProof q = p;
        q.add_resolvent(r.resolvent, steps[i].id, steps[j].id, r.pivot);
        const auto v = check(phi, q);
        EXPECT_EQ(v.reason, "final clause not empty");
        EXPECT_TRUE(semantically_sound(steps[i].clause, steps[j].clause, r.resolvent));
        ++accepted;
      } catch (const Error &) {
      }
    }
  }
  EXPECT_GT(accepted, 0u);
}
