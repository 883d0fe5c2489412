// SPDX-License-Identifier: Apache-2.0
#pragma once

// Formula families and named fixtures.

#include "obddres/cnf.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace obddres {

/// PHP_n variable p_ij, row-major; `doubled` shifts by one for p0 = 1.
Var php_var(unsigned n, unsigned i, unsigned j, bool doubled = false);

/// n + 1 pigeon clauses, then the conflicts -p_ik | -p_jk for i < j,
/// enumerated by (i, j) and then hole k.
Cnf gen_php(unsigned n);

/// Every PHP_n clause C twice, as p0 | C followed by -p0 | C, with p0 = 1
/// first in the ascending order.
Cnf gen_php_doubled(unsigned n);

inline constexpr std::size_t kDefaultSamplingBudget = 200000;

/// Rejection-samples CNFs of random 2- and 3-clauses without repeated clauses
/// until the oracle finds one unsatisfiable. Same arguments, same formula.
/// Throws OracleTooLarge above `oracle_limit` variables and
/// SamplingBudgetExhausted after `budget` rejected formulas.
Cnf gen_random_unsat(Var vars, std::size_t clauses, std::uint64_t seed,
                     unsigned oracle_limit = kDefaultOracleLimit,
                     std::size_t budget = kDefaultSamplingBudget);

/// "running-example" or "eight-clause-example".
Cnf fixture(std::string_view name);
std::vector<std::string> fixture_names();

} // namespace obddres
