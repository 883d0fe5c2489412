// SPDX-License-Identifier: Apache-2.0
#include "obddres/cnf.hpp"

#include "obddres/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace obddres {

const char *error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::Parse: return "ParseError";
  case ErrorCode::NotResolvable: return "NotResolvable";
  case ErrorCode::TautologicalResolvent: return "TautologicalResolvent";
  case ErrorCode::TautologicalClause: return "TautologicalClause";
  case ErrorCode::OracleTooLarge: return "OracleTooLarge";
  case ErrorCode::PathBudgetExceeded: return "PathBudgetExceeded";
  case ErrorCode::Precondition: return "PreconditionViolation";
  case ErrorCode::StoreMismatch: return "StoreMismatch";
  case ErrorCode::Invariant: return "InvariantViolation";
  case ErrorCode::SamplingBudgetExhausted: return "SamplingBudgetExhausted";
  case ErrorCode::Usage: return "UsageError";
  }
  return "Unknown";
}

Literal Literal::from_dimacs(int lit) {
  if (lit == 0)
    throw Error(ErrorCode::Precondition, "literal 0 is the clause terminator");
  return Literal(static_cast<Var>(std::abs(lit)), lit < 0);
}

std::ostream &operator<<(std::ostream &os, Literal lit) {
  return os << lit.to_dimacs();
}

bool has_complementary_pair(std::span<const Literal> lits) {
  std::vector<Literal> sorted(lits.begin(), lits.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].var() == sorted[i - 1].var() &&
        sorted[i].negative() != sorted[i - 1].negative())
      return true;
  return false;
}

Clause Clause::of(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].var() == lits[i - 1].var())
      throw Error(ErrorCode::TautologicalClause,
                  "clause contains both polarities of variable " +
                      std::to_string(lits[i].var()));
  Clause c;
  c.lits_ = std::move(lits);
  return c;
}

Clause Clause::dimacs(std::initializer_list<int> lits) {
  std::vector<Literal> v;
  v.reserve(lits.size());
  for (int l : lits)
    v.push_back(Literal::from_dimacs(l));
  return of(std::move(v));
}

bool Clause::contains(Literal lit) const {
  return std::binary_search(lits_.begin(), lits_.end(), lit);
}

std::vector<Var> Clause::variables() const {
  std::vector<Var> vs;
  vs.reserve(lits_.size());
  for (Literal l : lits_)
    vs.push_back(l.var());
  return vs;
}

std::vector<int> Clause::to_dimacs() const {
  std::vector<int> out;
  out.reserve(lits_.size());
  for (Literal l : lits_)
    out.push_back(l.to_dimacs());
  return out;
}

std::string Clause::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const Clause &c) {
  os << '{';
  bool first = true;
  for (Literal l : c.literals()) {
    if (!first)
      os << ' ';
    os << l;
    first = false;
  }
  return os << '}';
}

std::size_t ClauseHash::operator()(const Clause &c) const noexcept {
  std::size_t seed = c.size();
  for (Literal l : c.literals()) {
    auto v = static_cast<std::size_t>(l.var()) * 2 + (l.negative() ? 1 : 0);
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

Var Cnf::max_var() const {
  Var m = declared_vars_;
  for (const Clause &c : clauses_)
    for (Literal l : c.literals())
      m = std::max(m, l.var());
  return m;
}

std::vector<Var> Cnf::var_set() const {
  std::vector<Var> vs;
  for (const Clause &c : clauses_)
    for (Literal l : c.literals())
      vs.push_back(l.var());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// ---------------------------------------------------------------------------
// DIMACS

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

bool parse_int(std::string_view tok, long long &out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

[[noreturn]] void parse_fail(std::size_t line, const std::string &msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg,
              line);
}

} // namespace

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  bool have_header = false;
  long long declared_clauses = 0;
  std::size_t read_clauses = 0;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);

    auto toks = split_ws(line);
    if (toks.empty())
      continue;
    if (toks[0] == "c" || toks[0].front() == 'c') {
      auto body = line.substr(line.find('c') + 1);
      if (!body.empty() && body.front() == ' ')
        body.remove_prefix(1);
      cnf.comments().emplace_back(body);
      continue;
    }
    if (toks[0] == "%")
      break;
    if (toks[0] == "p") {
      if (have_header)
        parse_fail(line_no, "duplicate header");
      long long v = 0, m = 0;
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], v) ||
          !parse_int(toks[3], m) || v < 0 || m < 0)
        parse_fail(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      cnf.set_declared_vars(static_cast<Var>(v));
      declared_clauses = m;
      have_header = true;
      continue;
    }
    if (!have_header)
      parse_fail(line_no, "clause data before 'p cnf' header");

    for (std::string_view tok : toks) {
      long long lit = 0;
      if (!parse_int(tok, lit))
        parse_fail(line_no, "not an integer: '" + std::string(tok) + "'");
      if (lit == 0) {
        ++read_clauses;
        if (has_complementary_pair(pending)) {
          cnf.warnings().push_back("line " + std::to_string(pending_line) +
                                   ": tautological clause dropped");
        } else {
          cnf.add(Clause::of(std::move(pending)));
        }
        pending.clear();
        continue;
      }
      if (std::llabs(lit) > static_cast<long long>(cnf.declared_vars()))
        parse_fail(line_no, "literal " + std::to_string(lit) +
                                " out of range (header declares " +
                                std::to_string(cnf.declared_vars()) +
                                " variables)");
      if (pending.empty())
        pending_line = line_no;
      pending.push_back(Literal::from_dimacs(static_cast<int>(lit)));
    }
  }

  if (!have_header)
    parse_fail(std::max<std::size_t>(line_no, 1), "missing 'p cnf' header");
  if (!pending.empty())
    parse_fail(line_no, "missing terminating 0 for clause starting on line " +
                            std::to_string(pending_line));
  if (static_cast<long long>(read_clauses) != declared_clauses)
    parse_fail(line_no, "header declares " + std::to_string(declared_clauses) +
                            " clauses, found " + std::to_string(read_clauses));
  return cnf;
}

std::string write_dimacs(const Cnf &cnf) {
  std::ostringstream os;
  for (const std::string &c : cnf.comments())
    os << "c " << c << '\n';
  os << "p cnf " << cnf.declared_vars() << ' ' << cnf.size() << '\n';
  for (const Clause &c : cnf.clauses()) {
    for (Literal l : c.literals())
      os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Assignments and evaluation

Assignment::Assignment(std::vector<Var> universe) : universe_(std::move(universe)) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()),
                  universe_.end());
  Var top = universe_.empty() ? 0 : universe_.back();
  values_.assign(static_cast<std::size_t>(top) + 1, -1);
  for (Var v : universe_)
    values_[v] = 0;
}

bool Assignment::covers(Var v) const {
  return v < values_.size() && values_[v] >= 0;
}

void Assignment::set(Var v, bool value) {
  if (!covers(v))
    throw Error(ErrorCode::Precondition,
                "variable " + std::to_string(v) + " outside the assignment universe");
  values_[v] = value ? 1 : 0;
}

bool Assignment::value(Var v) const {
  if (!covers(v))
    throw Error(ErrorCode::Precondition,
                "variable " + std::to_string(v) + " outside the assignment universe");
  return values_[v] == 1;
}

bool eval(const Clause &c, const Assignment &a) {
  return std::any_of(c.literals().begin(), c.literals().end(),
                     [&](Literal l) { return a.satisfies(l); });
}

bool eval(const Cnf &phi, const Assignment &a) {
  return std::all_of(phi.clauses().begin(), phi.clauses().end(),
                     [&](const Clause &c) { return eval(c, a); });
}

Cnf restrict(const Cnf &phi, Literal lit) {
  Cnf out;
  out.set_declared_vars(phi.declared_vars());
  for (const Clause &c : phi.clauses()) {
    if (c.contains(lit))
      continue;
    if (!c.contains(~lit)) {
      out.add(c);
      continue;
    }
    std::vector<Literal> rest;
    for (Literal l : c.literals())
      if (l != ~lit)
        rest.push_back(l);
    out.add(Clause::of(std::move(rest)));
  }
  return out;
}

bool subsumes(const Clause &c, const Clause &d) {
  return std::includes(d.literals().begin(), d.literals().end(),
                       c.literals().begin(), c.literals().end());
}

std::vector<std::pair<std::size_t, std::size_t>> subsumed_pairs(const Cnf &phi) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 1; i <= phi.size(); ++i)
    for (std::size_t j = 1; j <= phi.size(); ++j)
      if (i != j && subsumes(phi.clause(i), phi.clause(j)) &&
          // identical clauses are reported once, from the earlier index
          !(phi.clause(i) == phi.clause(j) && i > j))
        out.emplace_back(i, j);
  return out;
}

Resolution resolve_on_pivot(const Clause &c, const Clause &d) {
  Var pivot = 0;
  int pairs = 0;
  for (Literal l : c.literals())
    if (d.contains(~l)) {
      ++pairs;
      pivot = l.var();
    }
  if (pairs == 0)
    throw Error(ErrorCode::NotResolvable,
                "clauses " + c.to_string() + " and " + d.to_string() +
                    " share no complementary pair");
  if (pairs > 1)
    throw Error(ErrorCode::TautologicalResolvent,
                "clauses " + c.to_string() + " and " + d.to_string() +
                    " share " + std::to_string(pairs) + " complementary pairs");
  std::vector<Literal> lits;
  lits.reserve(c.size() + d.size());
  for (Literal l : c.literals())
    if (l.var() != pivot)
      lits.push_back(l);
  for (Literal l : d.literals())
    if (l.var() != pivot)
      lits.push_back(l);
  return Resolution{Clause::of(std::move(lits)), pivot};
}

OracleResult brute_force_status(const Cnf &phi, unsigned limit) {
  std::vector<Var> vars = phi.var_set();
  if (vars.size() > limit)
    throw Error(ErrorCode::OracleTooLarge,
                "oracle limit is " + std::to_string(limit) + " variables, formula has " +
                    std::to_string(vars.size()));
  // Clause masks over the compact variable numbering.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  masks.reserve(phi.size());
  for (const Clause &c : phi.clauses()) {
    std::uint64_t pos = 0, neg = 0;
    for (Literal l : c.literals()) {
      auto bit = std::uint64_t{1}
                 << (std::lower_bound(vars.begin(), vars.end(), l.var()) - vars.begin());
      (l.negative() ? neg : pos) |= bit;
    }
    masks.emplace_back(pos, neg);
  }
  const std::uint64_t total = std::uint64_t{1} << vars.size();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    bool all = true;
    for (auto [pos, neg] : masks)
      if ((pos & bits) == 0 && (neg & ~bits) == 0) {
        all = false;
        break;
      }
    if (all) {
      Assignment witness(vars);
      for (std::size_t i = 0; i < vars.size(); ++i)
        witness.set(vars[i], (bits >> i) & 1);
      return OracleResult{true, std::move(witness)};
    }
  }
  return OracleResult{false, std::nullopt};
}

// ---------------------------------------------------------------------------
// Clause database

std::ostream &operator<<(std::ostream &os, ClauseId id) {
  return os << 'C' << id.value;
}

ClauseDb::ClauseDb(const Cnf &phi) {
  for (const Clause &c : phi.clauses())
    add_axiom(c);
}

ClauseId ClauseDb::add_axiom(Clause c) {
  if (num_axioms_ != entries_.size())
    throw Error(ErrorCode::Precondition, "axioms must precede derived clauses");
  ClauseId id(static_cast<std::uint32_t>(entries_.size() + 1));
  index_.try_emplace(c, id);
  entries_.push_back(ClauseEntry{std::move(c), ClauseOrigin::Axiom, {}, {}, 0});
  ++num_axioms_;
  return id;
}

ClauseId ClauseDb::add_resolvent(Clause c, ClauseId left, ClauseId right, Var pivot) {
  ClauseId id(static_cast<std::uint32_t>(entries_.size() + 1));
  if (left.value == 0 || right.value == 0 || left >= id || right >= id)
    throw Error(ErrorCode::Precondition, "resolvent parents must already exist");
  index_.try_emplace(c, id);
  entries_.push_back(ClauseEntry{std::move(c), ClauseOrigin::Resolvent, left, right, pivot});
  return id;
}

std::optional<ClauseId> ClauseDb::find(const Clause &c) const {
  auto it = index_.find(c);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

} // namespace obddres
