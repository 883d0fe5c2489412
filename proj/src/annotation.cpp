// SPDX-License-Identifier: Apache-2.0
#include "obddres/annotation.hpp"

#include "obddres/error.hpp"

#include <algorithm>
#include <sstream>

namespace obddres {

bool falsifies(const FalsePath &path, const Clause &c) {
  for (Literal l : c.literals())
    if (std::find(path.literals.begin(), path.literals.end(), ~l) == path.literals.end())
      return false;
  return true;
}

Annotation::Annotation(NodeRef root, std::map<FalsePath, ClauseId> f,
                       std::vector<ClauseId> scope)
    : root_(root), f_(std::move(f)), scope_(std::move(scope)) {
  std::sort(scope_.begin(), scope_.end());
  scope_.erase(std::unique(scope_.begin(), scope_.end()), scope_.end());
}

std::optional<ClauseId> Annotation::find(const FalsePath &path) const {
  auto it = f_.find(path);
  if (it == f_.end()) return std::nullopt;
  return it->second;
}

ClauseId Annotation::at(const FalsePath &path) const {
  auto it = f_.find(path);
  if (it == f_.end())
    throw Error(ErrorCode::Invariant, "false path [" + path.to_string() + "] has no clause");
  return it->second;
}

bool Annotation::in_scope(ClauseId id) const {
  return std::binary_search(scope_.begin(), scope_.end(), id);
}

Annotation annotate_axiom(const ObddStore &store, const ClauseDb &db, ClauseId id, NodeRef b) {
  auto paths = store.false_paths(b);
  if (paths.size() != 1)
    throw Error(ErrorCode::Precondition, "axiom OBDD must have exactly one false path");
  if (!falsifies(paths.front(), db.clause(id)))
    throw Error(ErrorCode::Precondition, "axiom OBDD does not encode clause " +
                                             db.clause(id).to_string());
  std::map<FalsePath, ClauseId> f;
  f.emplace(std::move(paths.front()), id);
  return Annotation(b, std::move(f), {id});
}

namespace {

// Follows `path` from `root`; returns the literals read if it ends in FALSE.
std::optional<FalsePath> walk(const ObddStore &store, NodeRef root, const FalsePath &path) {
  FalsePath seen;
  NodeRef n = root;
  std::size_t k = 0;
  while (!n.is_terminal()) {
    const Var v = store.var(n);
    while (k < path.literals.size() && path.literals[k].var() != v) ++k;
    if (k == path.literals.size()) return std::nullopt; // path stops before this operand does
    const Literal l = path.literals[k];
    seen.literals.push_back(l);
    n = l.positive() ? store.high(n) : store.low(n);
  }
  if (n.is_true()) return std::nullopt;
  return seen;
}

std::vector<ClauseId> merge_scopes(const std::vector<ClauseId> &a, const std::vector<ClauseId> &b) {
  std::vector<ClauseId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace

Annotation annotate_join(const ObddStore &store, const Annotation &a1, const Annotation &a2,
                         NodeRef b12) {
  std::map<FalsePath, ClauseId> f;
  for (auto &alpha : store.false_paths(b12)) {
    std::optional<ClauseId> best;
    for (const Annotation *a : {&a1, &a2}) {
      if (auto beta = walk(store, a->root(), alpha)) {
        ClauseId c = a->at(*beta);
        if (!best || c < *best) best = c;
      }
    }
    if (!best)
      throw Error(ErrorCode::Invariant,
                  "false path [" + alpha.to_string() + "] contains no operand false path");
    f.emplace(std::move(alpha), *best);
  }
  return Annotation(b12, std::move(f), merge_scopes(a1.scope(), a2.scope()));
}

Annotation rebind_after_elimination(const ObddStore &store, const ClauseDb &db,
                                    const Annotation &a, const ReductionEvent &event,
                                    std::span<const ClauseId> new_clauses) {
  if (a.root() != event.root_before)
    throw Error(ErrorCode::Precondition, "annotation does not belong to the eliminated diagram");

  std::vector<ClauseId> scope = a.scope();
  scope.insert(scope.end(), new_clauses.begin(), new_clauses.end());
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

  // Merged path -> former clauses of its two halves.
  std::map<FalsePath, std::vector<ClauseId>> merged;
  std::map<FalsePath, ClauseId> f;
  for (auto &tp : store.traced_false_paths(event.root_before)) {
    auto pos = std::find(tp.nodes.begin(), tp.nodes.end(), event.node);
    const ClauseId prior = a.at(tp.path);
    if (pos == tp.nodes.end()) {
      f.emplace(std::move(tp.path), prior);
      continue;
    }
    FalsePath m = tp.path;
    m.literals.erase(m.literals.begin() + (pos - tp.nodes.begin()));
    merged[std::move(m)].push_back(prior);
  }

  for (auto &[path, priors] : merged) {
    std::optional<ClauseId> pick;
    for (ClauseId c : priors)
      if (falsifies(path, db.clause(c)) && (!pick || c < *pick)) pick = c;
    if (!pick) {
      for (ClauseId c : scope) { // ascending, so the first hit is the lowest
        if (falsifies(path, db.clause(c))) {
          pick = c;
          break;
        }
      }
    }
    if (!pick)
      throw Error(ErrorCode::Invariant,
                  "merged path [" + path.to_string() + "] falsifies no available clause");
    f.emplace(path, *pick);
  }

  if (f.size() != store.count_false_paths(event.root_after))
    throw Error(ErrorCode::Invariant, "rebound map does not cover the reduced diagram");
  return Annotation(event.root_after, std::move(f), std::move(scope));
}

namespace {
void add_to_profile(NodeProfile &p, ClauseId c) {
  ++p.false_path_count;
  auto [it, fresh] = p.gamma.emplace(c, 0);
  if (fresh)
    p.cls.insert(c);
  else {
    ++it->second;
    ++p.tau;
  }
}
} // namespace

NodeProfile profile(const ObddStore &store, const Annotation &a, NodeRef p) {
  if (p.is_terminal() || !store.reaches(a.root(), p))
    throw Error(ErrorCode::Precondition, "profiled node is not an inner node of the diagram");
  NodeProfile out;
  out.node = p;
  for (const auto &tp : store.traced_false_paths(a.root()))
    if (std::find(tp.nodes.begin(), tp.nodes.end(), p) != tp.nodes.end())
      add_to_profile(out, a.at(tp.path));
  return out;
}

std::map<NodeRef, NodeProfile> profile_all(const ObddStore &store, const Annotation &a) {
  std::map<NodeRef, NodeProfile> out;
  for (NodeRef n : store.reachable(a.root())) out[n].node = n;
  for (const auto &tp : store.traced_false_paths(a.root())) {
    const ClauseId c = a.at(tp.path);
    for (NodeRef n : tp.nodes) add_to_profile(out[n], c);
  }
  return out;
}

std::size_t max_difference(const std::map<NodeRef, NodeProfile> &profiles) {
  std::size_t best = 0;
  for (const auto &[n, p] : profiles) best = std::max(best, p.difference());
  return best;
}

UnlhdReport check_unlhd(const ObddStore &store, const ClauseDb &db, const Annotation &a,
                        unsigned oracle_limit) {
  UnlhdReport r;
  std::ostringstream why;

  Cnf phi;
  for (ClauseId id : a.scope()) phi.add(db.clause(id));
  std::vector<Var> universe = phi.var_set();
  for (Var v : store.support(a.root())) universe.push_back(v);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.size() > oracle_limit)
    throw Error(ErrorCode::OracleTooLarge, std::to_string(universe.size()) +
                                               " variables exceed the oracle limit of " +
                                               std::to_string(oracle_limit));

  r.equivalent = true;
  Assignment asg(universe);
  const std::uint64_t total = std::uint64_t{1} << universe.size();
  for (std::uint64_t bits = 0; bits < total && r.equivalent; ++bits) {
    for (std::size_t i = 0; i < universe.size(); ++i) asg.set(universe[i], (bits >> i) & 1);
    if (eval(phi, asg) != store.eval(a.root(), asg)) {
      r.equivalent = false;
      why << "truth tables differ at assignment " << bits << "; ";
    }
  }

  r.paths_falsified = true;
  r.total = true;
  const auto paths = store.false_paths(a.root());
  for (const auto &alpha : paths) {
    auto c = a.find(alpha);
    if (!c) {
      r.total = false;
      why << "path [" << alpha.to_string() << "] unmapped; ";
      continue;
    }
    if (!a.in_scope(*c) || c->value == 0 || c->value > db.size() ||
        !falsifies(alpha, db.clause(*c))) {
      r.paths_falsified = false;
      why << "path [" << alpha.to_string() << "] does not falsify " << *c << "; ";
    }
  }
  if (a.size() != paths.size()) {
    r.total = false;
    why << "map has " << a.size() << " entries for " << paths.size() << " false paths; ";
  }
  r.detail = why.str();
  return r;
}

} // namespace obddres
