// SPDX-License-Identifier: Apache-2.0
#pragma once

// CNF data model: literals, clauses, formulas, truth assignments, the
// resolution rule and a brute-force satisfiability oracle.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace obddres {

using Var = std::uint32_t;

class Literal {
public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool negative) : var_(var), negative_(negative) {}

  /// Builds from a non-zero DIMACS integer.
  static Literal from_dimacs(int lit);
  static constexpr Literal pos(Var v) { return Literal(v, false); }
  static constexpr Literal neg(Var v) { return Literal(v, true); }

  constexpr Var var() const { return var_; }
  constexpr bool negative() const { return negative_; }
  constexpr bool positive() const { return !negative_; }
  int to_dimacs() const {
    return negative_ ? -static_cast<int>(var_) : static_cast<int>(var_);
  }

  constexpr Literal operator~() const { return Literal(var_, !negative_); }

  // Sorted by variable, positive polarity first.
  constexpr auto operator<=>(const Literal &) const = default;

private:
  Var var_ = 0;
  bool negative_ = false;
};

std::ostream &operator<<(std::ostream &os, Literal lit);

/// True when the literal list contains some pair {x, -x}.
bool has_complementary_pair(std::span<const Literal> lits);

/// A disjunction of literals kept sorted and duplicate free. Tautologies are
/// not representable; the empty clause is the contradiction.
class Clause {
public:
  Clause() = default;

  /// Sorts and deduplicates; throws TautologicalClause on a pair {x, -x}.
  static Clause of(std::vector<Literal> lits);
  static Clause dimacs(std::initializer_list<int> lits);

  std::span<const Literal> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Literal lit) const;
  std::vector<Var> variables() const;
  std::vector<int> to_dimacs() const;
  std::string to_string() const;

  auto operator<=>(const Clause &) const = default;

private:
  std::vector<Literal> lits_;
};

std::ostream &operator<<(std::ostream &os, const Clause &c);

struct ClauseHash {
  std::size_t operator()(const Clause &c) const noexcept;
};

class Cnf {
public:
  Cnf() = default;
  Cnf(Var declared_vars, std::vector<Clause> clauses)
      : declared_vars_(declared_vars), clauses_(std::move(clauses)) {}

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  /// 1-based, matching the clause numbering used in proofs.
  const Clause &clause(std::size_t index) const { return clauses_.at(index - 1); }
  std::span<const Clause> clauses() const { return clauses_; }

  Var declared_vars() const { return declared_vars_; }
  /// Largest of the declared count and the largest variable in use.
  Var max_var() const;
  /// Sorted union of clause variables.
  std::vector<Var> var_set() const;

  void add(Clause c) { clauses_.push_back(std::move(c)); }
  void set_declared_vars(Var v) { declared_vars_ = v; }

  std::vector<std::string> &warnings() { return warnings_; }
  const std::vector<std::string> &warnings() const { return warnings_; }
  std::vector<std::string> &comments() { return comments_; }
  const std::vector<std::string> &comments() const { return comments_; }

  bool operator==(const Cnf &o) const {
    return declared_vars_ == o.declared_vars_ && clauses_ == o.clauses_;
  }

private:
  Var declared_vars_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::string> warnings_;
  std::vector<std::string> comments_;
};

Cnf parse_dimacs(std::string_view text);
std::string write_dimacs(const Cnf &cnf);

/// Truth assignment total on a declared universe of variables.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::vector<Var> universe);

  const std::vector<Var> &universe() const { return universe_; }
  bool covers(Var v) const;
  void set(Var v, bool value);
  bool value(Var v) const;
  bool satisfies(Literal lit) const {
    return value(lit.var()) != lit.negative();
  }

private:
  std::vector<Var> universe_;
  std::vector<std::int8_t> values_; // indexed by variable, -1 outside
};

bool eval(const Clause &c, const Assignment &a);
bool eval(const Cnf &phi, const Assignment &a);

/// phi restricted by lit: clauses containing lit vanish, ~lit is removed.
Cnf restrict(const Cnf &phi, Literal lit);

/// Literal-set inclusion; the empty clause subsumes everything.
bool subsumes(const Clause &c, const Clause &d);

/// Index pairs (i, j), 1-based and i != j, where clause i subsumes clause j.
std::vector<std::pair<std::size_t, std::size_t>> subsumed_pairs(const Cnf &phi);

struct Resolution {
  Clause resolvent;
  Var pivot = 0;
};

/// Resolves two clauses sharing exactly one complementary pair. Throws
/// NotResolvable for zero pairs and TautologicalResolvent for two or more.
Resolution resolve_on_pivot(const Clause &c, const Clause &d);
inline Clause resolve(const Clause &c, const Clause &d) {
  return resolve_on_pivot(c, d).resolvent;
}

inline constexpr unsigned kDefaultOracleLimit = 20;

struct OracleResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;
};

/// Enumerates every assignment over var(phi). Throws OracleTooLarge when
/// |var(phi)| exceeds the limit.
OracleResult brute_force_status(const Cnf &phi,
                                unsigned limit = kDefaultOracleLimit);

/// Stable clause identifier inside a ClauseDb (1-based).
struct ClauseId {
  std::uint32_t value = 0;
  constexpr ClauseId() = default;
  constexpr explicit ClauseId(std::uint32_t v) : value(v) {}
  constexpr auto operator<=>(const ClauseId &) const = default;
};

std::ostream &operator<<(std::ostream &os, ClauseId id);

enum class ClauseOrigin { Axiom, Resolvent };

struct ClauseEntry {
  Clause clause;
  ClauseOrigin origin = ClauseOrigin::Axiom;
  ClauseId left;  // resolvents only
  ClauseId right; // resolvents only
  Var pivot = 0;
};

/// Append-only clause store. Axioms get ids 1..m in input order; every
/// derived clause gets the next id, so ids never get reused.
class ClauseDb {
public:
  ClauseDb() = default;
  explicit ClauseDb(const Cnf &phi);

  ClauseId add_axiom(Clause c);
  ClauseId add_resolvent(Clause c, ClauseId left, ClauseId right, Var pivot);

  const ClauseEntry &entry(ClauseId id) const { return entries_.at(id.value - 1); }
  const Clause &clause(ClauseId id) const { return entry(id).clause; }
  std::size_t size() const { return entries_.size(); }
  std::size_t num_axioms() const { return num_axioms_; }
  bool is_axiom(ClauseId id) const { return entry(id).origin == ClauseOrigin::Axiom; }

  /// Lowest id holding an identical clause, if any.
  std::optional<ClauseId> find(const Clause &c) const;

private:
  std::vector<ClauseEntry> entries_;
  std::size_t num_axioms_ = 0;
  std::unordered_map<Clause, ClauseId, ClauseHash> index_;
};

} // namespace obddres

template <> struct std::hash<obddres::ClauseId> {
  std::size_t operator()(obddres::ClauseId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
