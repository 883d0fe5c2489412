// SPDX-License-Identifier: Apache-2.0
#pragma once

// OBDD refutation driver (Axiom, Join, reduce after every Join) and its
// translation into a resolution refutation. Every elimination is simulated
// by resolution steps and documented in a certificate.

#include "obddres/annotation.hpp"
#include "obddres/cnf.hpp"
#include "obddres/obdd.hpp"
#include "obddres/proof.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace obddres {

/// Binary tree over axioms 1..m: m leaves, m - 1 joins.
class JoinSchedule {
public:
  struct Node {
    std::size_t clause = 0; // leaf when non-zero
    int left = -1;
    int right = -1;
    bool is_leaf() const { return clause != 0; }
  };

  /// ((1 2) 3) ... m
  static JoinSchedule linear(std::size_t m);
  /// Halves split recursively, left half rounded up.
  static JoinSchedule balanced(std::size_t m);
  /// S-expression such as "((1 2) (3 4))"; every index 1..m exactly once.
  static JoinSchedule parse(std::string_view text, std::size_t m);

  const std::vector<Node> &nodes() const { return nodes_; }
  int root() const { return root_; }
  std::size_t num_leaves() const { return leaves_; }
  std::string to_string() const;

private:
  int add_leaf(std::size_t clause);
  int add_join(int left, int right);
  void validate(std::size_t m) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t leaves_ = 0;
};

struct PathPair {
  FalsePath negative; // alpha.-x.beta
  FalsePath positive; // alpha.x.beta
  FalsePath merged;   // alpha.beta
  ClauseId negative_clause;
  ClauseId positive_clause;
};

struct EmittedResolvent {
  ClauseId id;
  ClauseId positive_parent; // F(alpha.x.beta), contains -x
  ClauseId negative_parent; // F(alpha.-x.beta), contains x
  std::size_t pair = 0;     // first pair that produced it
  bool reused = false;      // already derived by an earlier event
};

struct GuardSkip {
  std::size_t pair = 0;
  ClauseId guard; // lowest existing clause falsified by the merged path
};

struct EliminationCertificate {
  std::size_t obdd_index = 0; // sequence position of the join being reduced
  NodeRef node;
  Var var = 0;
  NodeRef root_before;
  NodeRef root_after;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
  std::vector<PathPair> pairs;
  std::vector<EmittedResolvent> resolvents;
  std::vector<GuardSkip> skips;
  std::size_t false_paths = 0;   // |Pf(p)|
  std::size_t tau = 0;           // tau(p) before the event
  std::size_t cls_count = 0;     // |Cls(p)| before the event
  std::size_t input_clauses = 0; // m

  std::size_t half_bound() const { return (false_paths + 1) / 2; }
  std::size_t refined_bound() const { return false_paths - tau; }
  std::size_t bound() const { return std::min(half_bound(), input_clauses); }
  std::size_t new_resolvents() const;
  bool within_bounds() const {
    return resolvents.size() <= bound() && resolvents.size() <= refined_bound();
  }
};

struct EliminationOutcome {
  EliminationCertificate certificate;
  Annotation annotation;
  std::unordered_map<NodeRef, NodeRef> image;
};

/// Simulates eliminating p from a.root(): pairs the false paths through p,
/// skips a pair when a clause of a's scope already falsifies its merged path,
/// otherwise derives the resolvent of the two path clauses. New clauses are
/// appended to db. `m` is the input clause count used for the bounds.
EliminationOutcome simulate_elimination(ObddStore &store, ClauseDb &db, const Annotation &a,
                                        NodeRef p, std::size_t m);

struct ObddEntry {
  enum class Kind { Axiom, Join };
  Kind kind = Kind::Axiom;
  std::size_t index = 0; // 1-based position in the sequence
  ClauseId clause;       // axioms
  std::size_t left = 0;  // joins: operand positions
  std::size_t right = 0;
  NodeRef obdd;          // as built
  std::size_t size = 0;
  NodeRef reduced;
  std::size_t reduced_size = 0;
  std::size_t first_certificate = 0;
  std::size_t num_certificates = 0;
};

struct StepRecord {
  enum class Kind { Axiom, Join, Eliminate };
  Kind kind = Kind::Axiom;
  std::size_t ref = 0; // OBDD position, or certificate index for Eliminate
};

struct Violation {
  std::string invariant;
  std::size_t obdd_index = 0;
  std::string detail;
};

enum class Outcome { Refuted, Satisfiable };

struct RefutationScript {
  Outcome outcome = Outcome::Satisfiable;
  std::shared_ptr<ObddStore> store;
  ClauseDb db;
  std::size_t m = 0;
  std::string schedule;
  std::vector<ObddEntry> obdds;
  std::vector<EliminationCertificate> certificates;
  std::vector<StepRecord> steps;
  std::optional<std::size_t> first_false; // position where FALSE first appears
  std::optional<ClauseId> empty_clause;
  Annotation final_annotation;
  std::vector<std::string> warnings;
  std::vector<Violation> violations;

  /// Sizes along the run: every OBDD, followed by its reduced form when
  /// reduction changed it.
  std::vector<std::size_t> size_sequence() const;
  /// Sum of size_sequence().
  std::size_t size_run() const;
  /// Sum over the sequence's OBDDs as they enter the sequence.
  std::size_t size_sequence_sum() const;
};

class RunObserver {
public:
  virtual ~RunObserver() = default;
  virtual void on_axiom(const ObddStore &, const ClauseDb &, std::size_t /*index*/,
                        const Annotation &) {}
  virtual void on_join(const ObddStore &, const ClauseDb &, std::size_t /*index*/,
                       const Annotation & /*left*/, const Annotation & /*right*/,
                       const Annotation & /*result*/) {}
  virtual void on_elimination(const ObddStore &, const ClauseDb &,
                              const Annotation & /*before*/, const EliminationOutcome &) {}
  virtual void on_reduced(const ObddStore &, const ClauseDb &, const ObddEntry &) {}
  virtual void on_finished(const RefutationScript &) {}
  virtual std::vector<Violation> take_violations() { return {}; }
};

/// Checks the structural properties of every step with exhaustive oracles.
/// Instances above `oracle_limit` variables are skipped for the oracle parts.
class InvariantMonitor : public RunObserver {
public:
  explicit InvariantMonitor(unsigned oracle_limit = 12) : oracle_limit_(oracle_limit) {}

  void on_axiom(const ObddStore &, const ClauseDb &, std::size_t, const Annotation &) override;
  void on_join(const ObddStore &, const ClauseDb &, std::size_t, const Annotation &,
               const Annotation &, const Annotation &) override;
  void on_elimination(const ObddStore &, const ClauseDb &, const Annotation &,
                      const EliminationOutcome &) override;
  void on_reduced(const ObddStore &, const ClauseDb &, const ObddEntry &) override;
  void on_finished(const RefutationScript &) override;
  std::vector<Violation> take_violations() override;

  /// Sub-property name -> number of times it was evaluated.
  const std::map<std::string, std::size_t> &checked() const { return checked_; }

private:
  void flag(const std::string &inv, std::size_t index, std::string detail);
  void tick(const std::string &inv) { ++checked_[inv]; }
  void check_annotation(const ObddStore &, const ClauseDb &, std::size_t, const Annotation &);

  unsigned oracle_limit_;
  std::size_t current_ = 0;
  std::size_t join_size_ = 0;
  std::vector<Violation> violations_;
  std::map<std::string, std::size_t> checked_;
};

struct RunOptions {
  std::optional<VariableOrder> order;    // default: ascending over the variables
  std::optional<JoinSchedule> schedule;  // default: linear
  std::uint64_t path_budget = kDefaultPathBudget;
  bool verify_invariants = false;        // attach an InvariantMonitor
  unsigned oracle_limit = 12;
  RunObserver *observer = nullptr;       // optional extra observer
};

/// Runs every join of the schedule; joins whose operand is already FALSE
/// yield FALSE without events. Throws Precondition on an empty formula and
/// PathBudgetExceeded when an elimination needs too many false paths.
RefutationScript run_refutation(const Cnf &phi, const RunOptions &options = {});

struct BoundReport {
  std::size_t m = 0;
  std::size_t n = 0;          // size_run()
  std::size_t n_sequence = 0; // size_sequence_sum()
  std::size_t derived = 0;
  bool within_mn = false;
  bool n_squared_applies = false;
  bool within_n_squared = false;
  bool within_mn_sequence = false;
  bool n_squared_applies_sequence = false;
  bool within_n_squared_sequence = false;

  bool ok() const {
    return within_mn && (!n_squared_applies || within_n_squared) && within_mn_sequence &&
           (!n_squared_applies_sequence || within_n_squared_sequence);
  }
};

struct Translation {
  ResolutionProof proof;
  BoundReport bounds;
  /// Proof step id for each clause id that made it into the proof.
  std::unordered_map<ClauseId, std::uint32_t> step_of;
};

/// Axioms in input order, then every derived clause in derivation order, up
/// to the first empty clause. Throws Precondition unless the run refuted phi.
Translation translate(const RefutationScript &script);

} // namespace obddres
