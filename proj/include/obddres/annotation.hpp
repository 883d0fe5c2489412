// SPDX-License-Identifier: Apache-2.0
#pragma once

// The map F from false paths of an OBDD to clauses it falsifies, plus the
// per-node quantities derived from it.

#include "obddres/cnf.hpp"
#include "obddres/obdd.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace obddres {

/// Syntactic falsification: every literal of c occurs negated in the path.
bool falsifies(const FalsePath &path, const Clause &c);

class Annotation {
public:
  Annotation() = default;
  /// `scope` lists the clauses the OBDD encodes: its axioms plus every clause
  /// derived while building it. Duplicates are removed.
  Annotation(NodeRef root, std::map<FalsePath, ClauseId> f, std::vector<ClauseId> scope);

  NodeRef root() const { return root_; }
  const std::map<FalsePath, ClauseId> &map() const { return f_; }
  std::size_t size() const { return f_.size(); }
  std::optional<ClauseId> find(const FalsePath &path) const;
  /// Throws Invariant when the path is not in the domain.
  ClauseId at(const FalsePath &path) const;

  /// Sorted ascending.
  const std::vector<ClauseId> &scope() const { return scope_; }
  bool in_scope(ClauseId id) const;

private:
  NodeRef root_;
  std::map<FalsePath, ClauseId> f_;
  std::vector<ClauseId> scope_;
};

/// F for a single clause OBDD: its only false path maps to `id`.
Annotation annotate_axiom(const ObddStore &store, const ClauseDb &db, ClauseId id,
                          NodeRef b);

/// F on b12 = apply_and(a1.root(), a2.root()). A false path of b12 inherits
/// the clause of the operand path it contains; when both operands supply
/// one, the lower id wins.
Annotation annotate_join(const ObddStore &store, const Annotation &a1, const Annotation &a2,
                         NodeRef b12);

/// F after one elimination. Paths that did not cross the eliminated node keep
/// their clause. A merged path keeps the lower of its two former clauses
/// that it still falsifies; failing that it takes the lowest falsified clause
/// among the scope and `new_clauses`. Throws Invariant when nothing fits.
Annotation rebind_after_elimination(const ObddStore &store, const ClauseDb &db,
                                    const Annotation &a, const ReductionEvent &event,
                                    std::span<const ClauseId> new_clauses);

struct NodeProfile {
  NodeRef node;
  std::set<ClauseId> cls;
  std::map<ClauseId, std::size_t> gamma;
  std::size_t tau = 0;
  std::size_t false_path_count = 0;

  std::size_t difference() const { return false_path_count - tau; }
};

/// Profile of p over the false paths of a.root() that pass through p.
NodeProfile profile(const ObddStore &store, const Annotation &a, NodeRef p);
/// Profiles of every reachable inner node from one path enumeration.
std::map<NodeRef, NodeProfile> profile_all(const ObddStore &store, const Annotation &a);
/// Largest difference |Pf(q)| - tau(q) over the inner nodes; 0 for terminals.
std::size_t max_difference(const std::map<NodeRef, NodeProfile> &profiles);

struct UnlhdReport {
  bool equivalent = false;    // truth tables agree
  bool paths_falsified = false;
  bool total = false;         // dom(F) is exactly the false-path set
  std::string detail;

  bool ok() const { return equivalent && paths_falsified && total; }
};

/// Decides the relation between the clauses in a's scope and a's OBDD.
/// Throws OracleTooLarge above `oracle_limit` variables.
UnlhdReport check_unlhd(const ObddStore &store, const ClauseDb &db, const Annotation &a,
                        unsigned oracle_limit = kDefaultOracleLimit);

} // namespace obddres
