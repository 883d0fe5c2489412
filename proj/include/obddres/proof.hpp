// SPDX-License-Identifier: Apache-2.0
#pragma once

// Resolution proofs, the trace format and a checker that depends on nothing
// but the CNF model.

#include "obddres/cnf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace obddres {

struct ProofStep {
  std::uint32_t id = 0;
  Clause clause;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> parents; // empty for axioms
  Var pivot = 0; // 0 when unknown

  bool is_axiom() const { return !parents.has_value(); }
};

class ResolutionProof {
public:
  /// Ids are assigned consecutively from 1.
  std::uint32_t add_axiom(Clause c);
  std::uint32_t add_resolvent(Clause c, std::uint32_t left, std::uint32_t right, Var pivot);
  /// Appends a step with a caller-chosen id; used by the trace reader.
  void push(ProofStep step) { steps_.push_back(std::move(step)); }

  const std::vector<ProofStep> &steps() const { return steps_; }
  std::vector<ProofStep> &steps() { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  std::size_t num_resolvents() const;
  const ProofStep *find(std::uint32_t id) const;

private:
  std::uint32_t next_id() const { return steps_.empty() ? 1 : steps_.back().id + 1; }
  std::vector<ProofStep> steps_;
};

struct CheckVerdict {
  bool ok = false;
  std::optional<std::uint32_t> failed_step;
  std::string reason;

  /// "OK" or "FAIL step <id>: <reason>".
  std::string to_string() const;
};

/// Axioms must be clauses of phi, every other step the exact resolvent of
/// two earlier steps on a single complementary pair, and the last clause
/// empty. Reports the first offending step.
CheckVerdict check(const Cnf &phi, const ResolutionProof &proof);

/// One line per step: "id lits 0 parents 0", axioms with an empty parent
/// list, LF endings.
std::string write_trace(const ResolutionProof &proof);
/// Inverse of write_trace. Pivots are recovered from the parents when they
/// share exactly one complementary pair. Throws Parse on malformed lines,
/// duplicate or decreasing ids and references to unknown ids.
ResolutionProof read_trace(std::string_view text);

} // namespace obddres
