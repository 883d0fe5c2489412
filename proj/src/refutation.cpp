// SPDX-License-Identifier: Apache-2.0
#include "obddres/refutation.hpp"

#include "obddres/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace obddres {

// ---------------------------------------------------------------- schedules

int JoinSchedule::add_leaf(std::size_t clause) {
  nodes_.push_back({clause, -1, -1});
  ++leaves_;
  return static_cast<int>(nodes_.size()) - 1;
}

int JoinSchedule::add_join(int left, int right) {
  nodes_.push_back({0, left, right});
  return static_cast<int>(nodes_.size()) - 1;
}

JoinSchedule JoinSchedule::linear(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::Precondition, "schedule needs at least one clause");
  JoinSchedule s;
  int acc = s.add_leaf(1);
  for (std::size_t k = 2; k <= m; ++k) acc = s.add_join(acc, s.add_leaf(k));
  s.root_ = acc;
  return s;
}

JoinSchedule JoinSchedule::balanced(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::Precondition, "schedule needs at least one clause");
  JoinSchedule s;
  std::function<int(std::size_t, std::size_t)> build = [&](std::size_t lo, std::size_t hi) {
    if (lo == hi) return s.add_leaf(lo);
    const std::size_t left_count = (hi - lo + 2) / 2;
    int l = build(lo, lo + left_count - 1);
    int r = build(lo + left_count, hi);
    return s.add_join(l, r);
  };
  s.root_ = build(1, m);
  return s;
}

JoinSchedule JoinSchedule::parse(std::string_view text, std::size_t m) {
  JoinSchedule s;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string &what) {
    return Error(ErrorCode::Parse, "schedule, offset " + std::to_string(pos) + ": " + what);
  };
  std::function<int()> expr = [&]() -> int {
    skip_ws();
    if (pos >= text.size()) throw fail("unexpected end");
    if (text[pos] == '(') {
      ++pos;
      int l = expr();
      int r = expr();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') throw fail("expected ')'");
      ++pos;
      return s.add_join(l, r);
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw fail("expected clause index or '('");
    return s.add_leaf(std::stoul(std::string(text.substr(start, pos - start))));
  };
  s.root_ = expr();
  skip_ws();
  if (pos != text.size()) throw fail("trailing input");
  s.validate(m);
  return s;
}

void JoinSchedule::validate(std::size_t m) const {
  std::vector<int> used(m + 1, 0);
  for (const Node &n : nodes_) {
    if (!n.is_leaf()) continue;
    if (n.clause > m)
      throw Error(ErrorCode::Parse, "schedule names clause " + std::to_string(n.clause) +
                                        " but the formula has " + std::to_string(m));
    if (used[n.clause]++)
      throw Error(ErrorCode::Parse, "schedule uses clause " + std::to_string(n.clause) + " twice");
  }
  for (std::size_t i = 1; i <= m; ++i)
    if (!used[i])
      throw Error(ErrorCode::Parse, "schedule omits clause " + std::to_string(i));
}

std::string JoinSchedule::to_string() const {
  std::function<std::string(int)> rec = [&](int i) -> std::string {
    const Node &n = nodes_[i];
    if (n.is_leaf()) return std::to_string(n.clause);
    return "(" + rec(n.left) + " " + rec(n.right) + ")";
  };
  return root_ < 0 ? std::string() : rec(root_);
}

// ---------------------------------------------------------------- elimination

std::size_t EliminationCertificate::new_resolvents() const {
  return static_cast<std::size_t>(std::count_if(resolvents.begin(), resolvents.end(),
                                                [](const EmittedResolvent &r) { return !r.reused; }));
}

EliminationOutcome simulate_elimination(ObddStore &store, ClauseDb &db, const Annotation &a,
                                        NodeRef p, std::size_t m) {
  if (p.is_terminal() || !store.is_redundant(p))
    throw Error(ErrorCode::Precondition, "only nodes with equal children can be eliminated");

  EliminationOutcome out;
  EliminationCertificate &cert = out.certificate;
  cert.node = p;
  cert.var = store.var(p);
  cert.root_before = a.root();
  cert.input_clauses = m;

  // Pair alpha.-x.beta with alpha.x.beta; both halves exist since low == high.
  std::map<FalsePath, std::size_t> pair_of;
  std::map<ClauseId, std::size_t> per_clause;
  for (auto &tp : store.traced_false_paths(a.root())) {
    auto it = std::find(tp.nodes.begin(), tp.nodes.end(), p);
    if (it == tp.nodes.end()) continue;
    const auto k = static_cast<std::size_t>(it - tp.nodes.begin());
    const ClauseId c = a.at(tp.path);
    ++cert.false_paths;
    ++per_clause[c];
    FalsePath merged = tp.path;
    merged.literals.erase(merged.literals.begin() + static_cast<std::ptrdiff_t>(k));
    auto [slot, fresh] = pair_of.emplace(merged, cert.pairs.size());
    if (fresh) {
      cert.pairs.push_back({});
      cert.pairs.back().merged = std::move(merged);
    }
    PathPair &pp = cert.pairs[slot->second];
    if (tp.path.literals[k].negative()) {
      pp.negative = std::move(tp.path);
      pp.negative_clause = c;
    } else {
      pp.positive = std::move(tp.path);
      pp.positive_clause = c;
    }
  }
  cert.cls_count = per_clause.size();
  cert.tau = cert.false_paths - cert.cls_count;

  std::map<Clause, std::size_t> emitted; // resolvent -> index in cert.resolvents
  std::vector<ClauseId> new_ids;
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
    const PathPair &pp = cert.pairs[i];
    if (pp.positive_clause.value == 0 || pp.negative_clause.value == 0)
      throw Error(ErrorCode::Invariant,
                  "false path [" + pp.merged.to_string() + "] has only one half through node");

    std::optional<ClauseId> guard;
    for (ClauseId c : a.scope()) {
      if (falsifies(pp.merged, db.clause(c))) {
        guard = c;
        break;
      }
    }
    if (guard) {
      cert.skips.push_back({i, *guard});
      continue;
    }

    const Clause &cpos = db.clause(pp.positive_clause);
    const Clause &cneg = db.clause(pp.negative_clause);
    Resolution res;
    try {
      res = resolve_on_pivot(cpos, cneg);
    } catch (const Error &e) {
      throw Error(ErrorCode::Invariant,
                  std::string("pair [") + pp.merged.to_string() + "] clauses " + cpos.to_string() +
                      " and " + cneg.to_string() + ": " + e.what());
    }
    if (res.pivot != cert.var)
      throw Error(ErrorCode::Invariant, "pair [" + pp.merged.to_string() +
                                            "] resolves on variable " + std::to_string(res.pivot) +
                                            " instead of " + std::to_string(cert.var));
    if (emitted.count(res.resolvent)) continue;

    EmittedResolvent er;
    er.positive_parent = pp.positive_clause;
    er.negative_parent = pp.negative_clause;
    er.pair = i;
    if (auto existing = db.find(res.resolvent)) {
      er.id = *existing;
      er.reused = true;
    } else {
      er.id = db.add_resolvent(res.resolvent, pp.positive_clause, pp.negative_clause, res.pivot);
    }
    emitted.emplace(res.resolvent, cert.resolvents.size());
    cert.resolvents.push_back(er);
    new_ids.push_back(er.id);
  }

  EliminationResult er = store.eliminate(a.root(), p);
  cert.root_after = er.root;
  cert.size_before = er.event.size_before;
  cert.size_after = er.event.size_after;
  out.annotation = rebind_after_elimination(store, db, a, er.event, new_ids);
  out.image = std::move(er.image);
  return out;
}

// ---------------------------------------------------------------- script

std::vector<std::size_t> RefutationScript::size_sequence() const {
  std::vector<std::size_t> out;
  for (const ObddEntry &e : obdds) {
    out.push_back(e.size);
    if (e.kind == ObddEntry::Kind::Join && e.num_certificates > 0) out.push_back(e.reduced_size);
  }
  return out;
}

std::size_t RefutationScript::size_run() const {
  std::size_t n = 0;
  for (std::size_t s : size_sequence()) n += s;
  return n;
}

std::size_t RefutationScript::size_sequence_sum() const {
  std::size_t n = 0;
  for (const ObddEntry &e : obdds) n += e.size;
  return n;
}

RefutationScript run_refutation(const Cnf &phi, const RunOptions &options) {
  if (phi.empty()) throw Error(ErrorCode::Precondition, "formula has no clauses");

  RefutationScript script;
  script.m = phi.size();
  VariableOrder order = options.order ? *options.order : VariableOrder::ascending(phi.max_var());
  for (Var v : phi.var_set())
    if (!order.contains(v))
      throw Error(ErrorCode::Precondition,
                  "variable " + std::to_string(v) + " missing from the order");
  script.store = std::make_shared<ObddStore>(std::move(order));
  ObddStore &store = *script.store;
  store.set_path_budget(options.path_budget);
  script.db = ClauseDb(phi);
  ClauseDb &db = script.db;

  const JoinSchedule schedule = options.schedule ? *options.schedule : JoinSchedule::linear(script.m);
  if (schedule.num_leaves() != script.m)
    throw Error(ErrorCode::Precondition, "schedule has " + std::to_string(schedule.num_leaves()) +
                                             " leaves for " + std::to_string(script.m) + " clauses");
  script.schedule = schedule.to_string();

  for (auto [i, j] : subsumed_pairs(phi))
    script.warnings.push_back("clause " + std::to_string(i) + " subsumes clause " +
                              std::to_string(j));

  InvariantMonitor monitor(options.oracle_limit);
  std::vector<RunObserver *> observers;
  if (options.verify_invariants) observers.push_back(&monitor);
  if (options.observer) observers.push_back(options.observer);

  std::vector<Annotation> reduced(1); // by sequence position, slot 0 unused
  auto note_false = [&](std::size_t index) {
    if (!script.first_false) script.first_false = index;
    if (!script.empty_clause) script.empty_clause = db.find(Clause());
  };

  for (std::size_t i = 1; i <= script.m; ++i) {
    const ClauseId id(static_cast<std::uint32_t>(i));
    NodeRef b = store.clause_obdd(db.clause(id));
    Annotation a = annotate_axiom(store, db, id, b);
    ObddEntry e;
    e.kind = ObddEntry::Kind::Axiom;
    e.index = i;
    e.clause = id;
    e.obdd = e.reduced = b;
    e.size = e.reduced_size = store.size(b);
    script.obdds.push_back(e);
    script.steps.push_back({StepRecord::Kind::Axiom, i});
    for (auto *o : observers) o->on_axiom(store, db, i, a);
    if (b.is_false()) note_false(i);
    reduced.push_back(std::move(a));
  }

  std::function<std::size_t(int)> exec = [&](int node) -> std::size_t {
    const JoinSchedule::Node &sn = schedule.nodes()[static_cast<std::size_t>(node)];
    if (sn.is_leaf()) return sn.clause;
    const std::size_t l = exec(sn.left);
    const std::size_t r = exec(sn.right);

    const std::size_t idx = script.obdds.size() + 1;
    NodeRef b = store.apply_and(reduced[l].root(), reduced[r].root());
    Annotation cur = annotate_join(store, reduced[l], reduced[r], b);
    ObddEntry e;
    e.kind = ObddEntry::Kind::Join;
    e.index = idx;
    e.left = l;
    e.right = r;
    e.obdd = b;
    e.size = store.size(b);
    e.first_certificate = script.certificates.size();
    script.steps.push_back({StepRecord::Kind::Join, idx});
    for (auto *o : observers) o->on_join(store, db, idx, reduced[l], reduced[r], cur);

    while (auto p = store.next_elimination_candidate(cur.root())) {
      EliminationOutcome out = simulate_elimination(store, db, cur, *p, script.m);
      out.certificate.obdd_index = idx;
      for (auto *o : observers) o->on_elimination(store, db, cur, out);
      script.steps.push_back({StepRecord::Kind::Eliminate, script.certificates.size()});
      script.certificates.push_back(out.certificate);
      cur = std::move(out.annotation);
    }
    e.reduced = cur.root();
    e.reduced_size = store.size(cur.root());
    e.num_certificates = script.certificates.size() - e.first_certificate;
    script.obdds.push_back(e);
    for (auto *o : observers) o->on_reduced(store, db, e);
    if (cur.root().is_false()) note_false(idx);
    reduced.push_back(std::move(cur));
    return idx;
  };
  const std::size_t last = exec(schedule.root());

  script.final_annotation = reduced[last];
  script.outcome = reduced[last].root().is_false() ? Outcome::Refuted : Outcome::Satisfiable;
  if (script.outcome == Outcome::Refuted && !script.empty_clause)
    script.violations.push_back({"empty-clause", last, "FALSE reached without deriving the empty clause"});

  for (auto *o : observers) o->on_finished(script);
  for (auto *o : observers)
    for (auto &v : o->take_violations()) script.violations.push_back(std::move(v));
  return script;
}

// ---------------------------------------------------------------- translation

Translation translate(const RefutationScript &script) {
  if (script.outcome != Outcome::Refuted || !script.empty_clause)
    throw Error(ErrorCode::Precondition, "only a refuting run can be translated");

  Translation t;
  const ClauseDb &db = script.db;
  const ClauseId bottom = *script.empty_clause;
  for (std::uint32_t v = 1; v <= db.size(); ++v) {
    const ClauseId id(v);
    const ClauseEntry &e = db.entry(id);
    std::uint32_t step = 0;
    if (e.origin == ClauseOrigin::Axiom) {
      step = t.proof.add_axiom(e.clause);
    } else {
      step = t.proof.add_resolvent(e.clause, t.step_of.at(e.left), t.step_of.at(e.right), e.pivot);
    }
    t.step_of.emplace(id, step);
    if (id == bottom) break;
  }

  BoundReport &b = t.bounds;
  b.m = script.m;
  b.n = script.size_run();
  b.n_sequence = script.size_sequence_sum();
  b.derived = t.proof.num_resolvents();
  b.within_mn = b.derived <= b.m * b.n;
  b.n_squared_applies = b.m <= b.n;
  b.within_n_squared = b.derived <= b.n * b.n;
  b.within_mn_sequence = b.derived <= b.m * b.n_sequence;
  b.n_squared_applies_sequence = b.m <= b.n_sequence;
  b.within_n_squared_sequence = b.derived <= b.n_sequence * b.n_sequence;
  return t;
}

// ---------------------------------------------------------------- invariants

void InvariantMonitor::flag(const std::string &inv, std::size_t index, std::string detail) {
  violations_.push_back({inv, index, std::move(detail)});
}

std::vector<Violation> InvariantMonitor::take_violations() {
  std::vector<Violation> out;
  out.swap(violations_);
  return out;
}

namespace {

std::size_t oracle_universe(const ObddStore &store, const ClauseDb &db, const Annotation &a) {
  std::vector<Var> vs = store.support(a.root());
  for (ClauseId id : a.scope())
    for (Var v : db.clause(id).variables()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  return static_cast<std::size_t>(std::unique(vs.begin(), vs.end()) - vs.begin());
}

} // namespace

void InvariantMonitor::check_annotation(const ObddStore &store, const ClauseDb &db,
                                        std::size_t index, const Annotation &a) {
  if (oracle_universe(store, db, a) <= oracle_limit_) {
    tick("a");
    UnlhdReport r = check_unlhd(store, db, a, oracle_limit_);
    if (!r.ok()) flag("a", index, r.detail);
  }

  // Both sides of |Pf(p)| - tau = |Cls(p)| from separate computations: the
  // path count by dynamic programming, Cls by a fresh enumeration filtered
  // through p, tau from the profile's gamma sums.
  tick("b");
  const auto profiles = profile_all(store, a);
  for (const auto &[node, prof] : profiles) {
    std::size_t tau = 0;
    for (const auto &[c, g] : prof.gamma) tau += g;
    std::set<ClauseId> cls;
    for (const auto &path : store.false_paths(a.root(), node)) cls.insert(a.at(path));
    const std::uint64_t pf = store.count_false_paths_through(a.root(), node);
    if (pf < tau || pf - tau != cls.size())
      flag("b", index, "node " + std::to_string(node.index()) + ": |Pf|=" + std::to_string(pf) +
                           " tau=" + std::to_string(tau) + " |Cls|=" + std::to_string(cls.size()));
  }
}

void InvariantMonitor::on_axiom(const ObddStore &store, const ClauseDb &db, std::size_t index,
                                const Annotation &a) {
  check_annotation(store, db, index, a);
}

void InvariantMonitor::on_join(const ObddStore &store, const ClauseDb &db, std::size_t index,
                               const Annotation &left, const Annotation &right,
                               const Annotation &result) {
  current_ = index;
  check_annotation(store, db, index, result);

  tick("d");
  const std::size_t k1 = max_difference(profile_all(store, left));
  const std::size_t k2 = max_difference(profile_all(store, right));
  for (const auto &[node, prof] : profile_all(store, result))
    if (prof.difference() > k1 + k2)
      flag("d", index, "node " + std::to_string(node.index()) + " difference " +
                           std::to_string(prof.difference()) + " > " + std::to_string(k1) + "+" +
                           std::to_string(k2));

  tick("e-joined");
  tick("e-operand");
  const auto joined = store.false_paths(result.root());
  std::vector<FalsePath> operands = store.false_paths(left.root());
  for (auto &p : store.false_paths(right.root())) operands.push_back(std::move(p));
  for (const auto &alpha : joined)
    if (std::none_of(operands.begin(), operands.end(),
                     [&](const FalsePath &beta) { return alpha.contains_all(beta); }))
      flag("e-joined", index, "joined path [" + alpha.to_string() + "] contains no operand path");
  for (const auto &beta : operands)
    if (std::none_of(joined.begin(), joined.end(),
                     [&](const FalsePath &alpha) { return alpha.contains_all(beta); }))
      flag("e-operand", index, "operand path [" + beta.to_string() + "] is in no joined path");

  const std::size_t s1 = store.size(left.root());
  const std::size_t s2 = store.size(right.root());
  join_size_ = store.size(result.root());
  tick("f");
  if (join_size_ > s1 * s2)
    flag("f", index, "size " + std::to_string(join_size_) + " > " + std::to_string(s1) + "*" +
                         std::to_string(s2));
  tick("f-vertices");
  const std::size_t v1 = store.vertex_count(left.root());
  const std::size_t v2 = store.vertex_count(right.root());
  const std::size_t v12 = store.vertex_count(result.root());
  if (v12 > v1 * v2)
    flag("f-vertices", index, "vertices " + std::to_string(v12) + " > " + std::to_string(v1) +
                                  "*" + std::to_string(v2));
}

void InvariantMonitor::on_elimination(const ObddStore &store, const ClauseDb &db,
                                      const Annotation &before, const EliminationOutcome &out) {
  check_annotation(store, db, current_, out.annotation);

  // The bound is claimed for images that are themselves eliminable.
  tick("c");
  const auto old_profiles = profile_all(store, before);
  const auto new_profiles = profile_all(store, out.annotation);
  for (const auto &[q, img] : out.image) {
    if (!store.is_redundant(img)) continue;
    auto o = old_profiles.find(q);
    auto n = new_profiles.find(img);
    if (o == old_profiles.end() || n == new_profiles.end()) {
      flag("c", current_, "node " + std::to_string(q.index()) + " has no profile");
      continue;
    }
    if (n->second.difference() > o->second.difference())
      flag("c", current_, "node " + std::to_string(q.index()) + " -> " +
                              std::to_string(img.index()) + ": difference " +
                              std::to_string(o->second.difference()) + " -> " +
                              std::to_string(n->second.difference()));
  }
}

void InvariantMonitor::on_reduced(const ObddStore &, const ClauseDb &, const ObddEntry &e) {
  tick("g");
  if (e.num_certificates > e.size)
    flag("g", e.index, std::to_string(e.num_certificates) + " eliminations on a diagram of " +
                           std::to_string(e.size) + " nodes");
}

void InvariantMonitor::on_finished(const RefutationScript &s) {
  if (s.outcome != Outcome::Refuted) return;
  tick("h");
  if (s.obdds.size() != 2 * s.m - 1)
    flag("h", s.obdds.size(), std::to_string(s.obdds.size()) + " OBDDs for " +
                                  std::to_string(s.m) + " clauses");
}

} // namespace obddres
