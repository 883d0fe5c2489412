// SPDX-License-Identifier: Apache-2.0
#include "obddres/families.hpp"

#include "obddres/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace obddres {

Var php_var(unsigned n, unsigned i, unsigned j, bool doubled) {
  return (i - 1) * n + j + (doubled ? 1 : 0);
}

namespace {

Cnf php_clauses(unsigned n, bool doubled) {
  if (n == 0) throw Error(ErrorCode::Precondition, "pigeonhole needs n >= 1");
  std::vector<Clause> cls;
  for (unsigned i = 1; i <= n + 1; ++i) {
    std::vector<Literal> lits;
    for (unsigned j = 1; j <= n; ++j) lits.push_back(Literal::pos(php_var(n, i, j, doubled)));
    cls.push_back(Clause::of(std::move(lits)));
  }
  for (unsigned i = 1; i <= n + 1; ++i)
    for (unsigned j = i + 1; j <= n + 1; ++j)
      for (unsigned k = 1; k <= n; ++k)
        cls.push_back(Clause::of({Literal::neg(php_var(n, i, k, doubled)),
                                  Literal::neg(php_var(n, j, k, doubled))}));
  return Cnf((n + 1) * n + (doubled ? 1 : 0), std::move(cls));
}

} // namespace

Cnf gen_php(unsigned n) {
  Cnf phi = php_clauses(n, false);
  phi.comments().push_back("pigeonhole n=" + std::to_string(n));
  return phi;
}

Cnf gen_php_doubled(unsigned n) {
  const Cnf base = php_clauses(n, true);
  Cnf phi;
  phi.set_declared_vars(base.declared_vars());
  for (const Clause &c : base.clauses()) {
    for (bool negative : {false, true}) {
      std::vector<Literal> lits(c.literals().begin(), c.literals().end());
      lits.push_back(Literal(1, negative));
      phi.add(Clause::of(std::move(lits)));
    }
  }
  phi.comments().push_back("doubled pigeonhole n=" + std::to_string(n));
  return phi;
}

Cnf gen_random_unsat(Var vars, std::size_t clauses, std::uint64_t seed, unsigned oracle_limit,
                     std::size_t budget) {
  if (vars > oracle_limit)
    throw Error(ErrorCode::OracleTooLarge, std::to_string(vars) +
                                               " variables exceed the oracle limit of " +
                                               std::to_string(oracle_limit));
  if (vars < 1 || clauses < 1)
    throw Error(ErrorCode::Precondition, "random formula needs variables and clauses");

  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t bound) { return rng() % bound; };
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    std::set<Clause> seen;
    std::vector<Clause> cls;
    std::size_t guard = 0;
    while (cls.size() < clauses && guard++ < 100 * clauses) {
      const Var width = std::min<Var>(vars, 2 + static_cast<Var>(below(2)));
      std::vector<Var> pool(vars);
      for (Var v = 0; v < vars; ++v) pool[v] = v + 1;
      std::vector<Literal> lits;
      for (Var k = 0; k < width; ++k) {
        const auto pick = static_cast<std::size_t>(below(pool.size() - k));
        std::swap(pool[k], pool[k + pick]);
        lits.push_back(Literal(pool[k], below(2) == 1));
      }
      Clause c = Clause::of(std::move(lits));
      if (seen.insert(c).second) cls.push_back(std::move(c));
    }
    if (cls.size() < clauses) break; // too few distinct clauses exist
    Cnf phi(vars, std::move(cls));
    if (!brute_force_status(phi, oracle_limit).satisfiable) {
      phi.comments().push_back("random unsat vars=" + std::to_string(vars) +
                               " clauses=" + std::to_string(clauses) +
                               " seed=" + std::to_string(seed));
      return phi;
    }
  }
  throw Error(ErrorCode::SamplingBudgetExhausted,
              "no unsatisfiable formula with " + std::to_string(vars) + " variables and " +
                  std::to_string(clauses) + " clauses within the sampling budget");
}

Cnf fixture(std::string_view name) {
  if (name == "running-example") {
    // x = 1, y = 2, z = 3
    Cnf phi(3, {Clause::dimacs({1, -2}), Clause::dimacs({2, 3}), Clause::dimacs({2, -3}),
                Clause::dimacs({-1})});
    phi.comments().push_back("running example");
    return phi;
  }
  if (name == "eight-clause-example") {
    // x = 1, y = 2, z = 3, v = 4, w = 5; C1..C4 then D1..D4
    Cnf phi(5, {Clause::dimacs({-1, -2, -4}), Clause::dimacs({-1, -3, -5}),
                Clause::dimacs({-1, 2, -4}), Clause::dimacs({-1, 3, -5}),
                Clause::dimacs({1, -3, -4}), Clause::dimacs({1, -2, -5}),
                Clause::dimacs({1, 3, -4}), Clause::dimacs({1, 2, -5})});
    phi.comments().push_back("eight-clause example");
    return phi;
  }
  throw Error(ErrorCode::Usage, "unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() { return {"running-example", "eight-clause-example"}; }

} // namespace obddres
