// SPDX-License-Identifier: Apache-2.0
#pragma once

// Ordered BDD store with a unique table. Conjunction follows the classic
// top-down product and never eliminates redundant tests on its own; nodes
// whose two branches coincide stay in the result until eliminate() or
// reduce() removes them, so every elimination is an observable event.

#include "obddres/cnf.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace obddres {

class ObddStore;

/// Handle to a node of one particular store.
class NodeRef {
public:
  constexpr NodeRef() = default;

  std::uint32_t index() const { return index_; }
  std::uint32_t store_id() const { return store_; }
  bool is_false() const { return index_ == 0; }
  bool is_true() const { return index_ == 1; }
  bool is_terminal() const { return index_ < 2; }
  bool valid() const { return store_ != 0; }

  constexpr auto operator<=>(const NodeRef &) const = default;

private:
  friend class ObddStore;
  constexpr NodeRef(std::uint32_t store, std::uint32_t index)
      : store_(store), index_(index) {}

  std::uint32_t store_ = 0;
  std::uint32_t index_ = 0;
};

} // namespace obddres

template <> struct std::hash<obddres::NodeRef> {
  std::size_t operator()(obddres::NodeRef r) const noexcept {
    return (static_cast<std::size_t>(r.store_id()) << 32) ^ r.index();
  }
};

namespace obddres {

/// Total order on variables: position 0 is tested first.
class VariableOrder {
public:
  VariableOrder() = default;
  static VariableOrder ascending(Var num_vars);
  /// `sequence` must be a permutation of 1..n.
  static VariableOrder from_sequence(std::vector<Var> sequence);

  std::size_t size() const { return sequence_.size(); }
  const std::vector<Var> &sequence() const { return sequence_; }
  bool contains(Var v) const { return v < rank_.size() && rank_[v] != kNoRank; }
  std::uint32_t rank(Var v) const;
  bool precedes(Var a, Var b) const { return rank(a) < rank(b); }

private:
  static constexpr std::uint32_t kNoRank = 0xffffffffu;
  std::vector<Var> sequence_;
  std::vector<std::uint32_t> rank_;
};

/// Literals of a root-to-terminal path in test order.
struct FalsePath {
  std::vector<Literal> literals;

  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
  /// Literal-set inclusion: every literal of `other` occurs here.
  bool contains_all(const FalsePath &other) const;
  std::optional<Literal> literal_for(Var v) const;
  /// "1.-2.3"; the empty path prints as the empty string.
  std::string to_string() const;

  auto operator<=>(const FalsePath &) const = default;
};

struct TracedPath {
  FalsePath path;
  std::vector<NodeRef> nodes; // inner nodes visited, root first
};

struct ReductionEvent {
  NodeRef node;        // the eliminated node
  Var var = 0;         // its label
  NodeRef child;       // low == high
  NodeRef root_before;
  NodeRef root_after;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

struct EliminationResult {
  NodeRef root;
  ReductionEvent event;
  /// Every inner node reachable before the event, other than the eliminated
  /// one, mapped to its image in the new diagram.
  std::unordered_map<NodeRef, NodeRef> image;
};

struct ReduceResult {
  NodeRef root;
  std::vector<ReductionEvent> events;
};

inline constexpr std::uint64_t kDefaultPathBudget = std::uint64_t{1} << 20;

class ObddStore {
public:
  explicit ObddStore(VariableOrder order);
  ObddStore(const ObddStore &) = delete;
  ObddStore &operator=(const ObddStore &) = delete;

  const VariableOrder &order() const { return order_; }
  std::uint32_t id() const { return id_; }
  std::size_t num_nodes() const { return nodes_.size(); }

  std::uint64_t path_budget() const { return path_budget_; }
  void set_path_budget(std::uint64_t budget) { path_budget_ = budget; }

  NodeRef false_ref() const { return NodeRef(id_, 0); }
  NodeRef true_ref() const { return NodeRef(id_, 1); }

  /// Unique-table lookup or insertion. Does not eliminate: low == high is
  /// allowed. Children must be labelled strictly later in the order.
  NodeRef make_node(Var var, NodeRef low, NodeRef high);

  Var var(NodeRef n) const;
  NodeRef low(NodeRef n) const;
  NodeRef high(NodeRef n) const;
  bool is_redundant(NodeRef n) const {
    return !n.is_terminal() && low(n) == high(n);
  }

  /// Reduced chain for one clause: a single false path falsifying every
  /// literal. The empty clause is the false terminal.
  NodeRef clause_obdd(const Clause &c);

  /// Top-down conjunction with a per-call memo on unordered operand pairs.
  NodeRef apply_and(NodeRef b1, NodeRef b2);

  /// Handle equality; the unique table makes it coincide with isomorphism.
  bool iso(NodeRef b1, NodeRef b2) const;
  /// Recursive structural comparison, independent of handle identity.
  bool iso_structural(NodeRef b1, NodeRef b2) const;

  /// Number of reachable inner nodes.
  std::size_t size(NodeRef b) const;
  /// Reachable inner nodes plus reachable terminals.
  std::size_t vertex_count(NodeRef b) const;
  /// Reachable inner nodes in creation order.
  std::vector<NodeRef> reachable(NodeRef b) const;
  bool reaches(NodeRef b, NodeRef p) const;

  /// Redirects every link to p towards its (single) child. Only ancestors of
  /// p are rebuilt; they may merge with existing nodes through the unique
  /// table. Throws Precondition if p is unreachable or low(p) != high(p).
  EliminationResult eliminate(NodeRef b, NodeRef p);

  /// The redundant node reduce() would eliminate next: latest variable in
  /// the order first, earliest creation index among ties.
  std::optional<NodeRef> next_elimination_candidate(NodeRef b) const;

  ReduceResult reduce(NodeRef b);

  std::uint64_t count_false_paths(NodeRef b) const;
  /// Number of false paths through node `through` (prefixes times suffixes).
  std::uint64_t count_false_paths_through(NodeRef b, NodeRef through) const;
  /// Depth-first, negative branch first. Throws PathBudgetExceeded when the
  /// count exceeds the store's budget.
  std::vector<FalsePath> false_paths(NodeRef b,
                                     std::optional<NodeRef> through = std::nullopt) const;
  std::vector<TracedPath> traced_false_paths(NodeRef b) const;

  bool eval(NodeRef b, const Assignment &a) const;
  std::vector<Var> support(NodeRef b) const;

  /// GraphViz rendering: high edges solid, low edges dotted.
  std::string dot(NodeRef b, const std::string &name = "obdd") const;
  /// One "id var low high" line per reachable inner node (creation order),
  /// terminals written as F and T.
  std::string dump(NodeRef b) const;

private:
  struct Node {
    Var var;
    std::uint32_t low;
    std::uint32_t high;
  };

  void check_ref(NodeRef n) const;
  NodeRef ref(std::uint32_t index) const { return NodeRef(id_, index); }
  NodeRef apply_rec(NodeRef b1, NodeRef b2);
  void check_budget(std::uint64_t count) const;

  VariableOrder order_;
  std::uint32_t id_;
  std::uint64_t path_budget_ = kDefaultPathBudget;
  std::vector<Node> nodes_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> unique_; // packed (var, low, high)
  std::unordered_map<std::uint64_t, NodeRef> memo_;
};

} // namespace obddres
