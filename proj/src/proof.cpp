// SPDX-License-Identifier: Apache-2.0
#include "obddres/proof.hpp"

#include "obddres/error.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

namespace obddres {

std::uint32_t ResolutionProof::add_axiom(Clause c) {
  const std::uint32_t id = next_id();
  steps_.push_back({id, std::move(c), std::nullopt, 0});
  return id;
}

std::uint32_t ResolutionProof::add_resolvent(Clause c, std::uint32_t left, std::uint32_t right,
                                             Var pivot) {
  const std::uint32_t id = next_id();
  steps_.push_back({id, std::move(c), std::make_pair(left, right), pivot});
  return id;
}

std::size_t ResolutionProof::num_resolvents() const {
  return static_cast<std::size_t>(
      std::count_if(steps_.begin(), steps_.end(), [](const ProofStep &s) { return !s.is_axiom(); }));
}

const ProofStep *ResolutionProof::find(std::uint32_t id) const {
  auto it = std::lower_bound(steps_.begin(), steps_.end(), id,
                             [](const ProofStep &s, std::uint32_t v) { return s.id < v; });
  return it != steps_.end() && it->id == id ? &*it : nullptr;
}

std::string CheckVerdict::to_string() const {
  if (ok) return "OK";
  std::string s = "FAIL";
  if (failed_step) s += " step " + std::to_string(*failed_step);
  return s + ": " + reason;
}

CheckVerdict check(const Cnf &phi, const ResolutionProof &proof) {
  auto fail = [](std::optional<std::uint32_t> step, std::string reason) {
    return CheckVerdict{false, step, std::move(reason)};
  };
  if (proof.empty()) return fail(std::nullopt, "empty proof");

  const std::set<Clause> axioms(phi.clauses().begin(), phi.clauses().end());
  std::unordered_map<std::uint32_t, const Clause *> seen;
  std::uint32_t last_id = 0;
  for (const ProofStep &s : proof.steps()) {
    if (s.id <= last_id) return fail(s.id, "ids must increase");
    last_id = s.id;
    if (s.is_axiom()) {
      if (!axioms.count(s.clause)) return fail(s.id, "axiom not in formula");
    } else {
      auto l = seen.find(s.parents->first);
      auto r = seen.find(s.parents->second);
      if (l == seen.end() || r == seen.end()) return fail(s.id, "parent not found");
      Resolution res;
      try {
        res = resolve_on_pivot(*l->second, *r->second);
      } catch (const Error &e) {
        if (e.code() == ErrorCode::TautologicalResolvent)
          return fail(s.id, "tautological resolvent");
        return fail(s.id, "not resolvable");
      }
      if (s.pivot != 0 && s.pivot != res.pivot) return fail(s.id, "wrong pivot");
      if (res.resolvent != s.clause) return fail(s.id, "not a valid resolvent");
    }
    seen.emplace(s.id, &s.clause);
  }
  if (!proof.steps().back().clause.empty())
    return fail(proof.steps().back().id, "final clause not empty");
  return CheckVerdict{true, std::nullopt, {}};
}

std::string write_trace(const ResolutionProof &proof) {
  std::ostringstream os;
  for (const ProofStep &s : proof.steps()) {
    os << s.id;
    for (Literal l : s.clause.literals()) os << ' ' << l.to_dimacs();
    os << " 0";
    if (s.parents) os << ' ' << s.parents->first << ' ' << s.parents->second;
    os << " 0\n";
  }
  return os.str();
}

namespace {

bool to_int(std::string_view tok, long long &out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

} // namespace

ResolutionProof read_trace(std::string_view text) {
  ResolutionProof proof;
  std::unordered_map<std::uint32_t, Clause> known;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<long long> nums;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) {
        long long v = 0;
        if (!to_int(line.substr(i, j - i), v))
          throw Error(ErrorCode::Parse,
                      "line " + std::to_string(line_no) + ": not an integer '" +
                          std::string(line.substr(i, j - i)) + "'",
                      line_no);
        nums.push_back(v);
      }
      i = j;
    }
    if (nums.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto bad = [&](const std::string &what) {
      return Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what, line_no);
    };
    if (nums[0] <= 0 || nums[0] > UINT32_MAX) throw bad("step id must be positive");
    const auto id = static_cast<std::uint32_t>(nums[0]);
    if (known.count(id)) throw bad("duplicate id " + std::to_string(id));
    if (!proof.empty() && id <= proof.steps().back().id) throw bad("ids must increase");

    auto zero = std::find(nums.begin() + 1, nums.end(), 0LL);
    if (zero == nums.end()) throw bad("missing 0 after literals");
    std::vector<Literal> lits;
    for (auto it = nums.begin() + 1; it != zero; ++it) {
      if (*it > INT32_MAX || *it < -INT32_MAX) throw bad("literal out of range");
      lits.push_back(Literal::from_dimacs(static_cast<int>(*it)));
    }
    if (has_complementary_pair(lits)) throw bad("tautological clause");
    std::vector<long long> parents(zero + 1, nums.end());
    if (parents.empty() || parents.back() != 0) throw bad("missing terminating 0");
    parents.pop_back();

    ProofStep step;
    step.id = id;
    step.clause = Clause::of(std::move(lits));
    if (parents.size() == 2) {
      for (long long p : parents) {
        if (p <= 0 || p > UINT32_MAX || !known.count(static_cast<std::uint32_t>(p)))
          throw bad("reference to unknown step " + std::to_string(p));
      }
      const auto l = static_cast<std::uint32_t>(parents[0]);
      const auto r = static_cast<std::uint32_t>(parents[1]);
      step.parents = std::make_pair(l, r);
      try {
        step.pivot = resolve_on_pivot(known.at(l), known.at(r)).pivot;
      } catch (const Error &) {
        step.pivot = 0;
      }
    } else if (!parents.empty()) {
      throw bad("expected zero or two parents");
    }
    known.emplace(id, step.clause);
    proof.push(std::move(step));
    if (end == text.size()) break;
  }
  return proof;
}

} // namespace obddres
