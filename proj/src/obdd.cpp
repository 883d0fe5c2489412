// SPDX-License-Identifier: Apache-2.0
#include "obddres/obdd.hpp"

#include "obddres/error.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace obddres {

namespace {

std::atomic<std::uint32_t> next_store_id{1};

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? UINT64_MAX : s;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

} // namespace

// ---------------------------------------------------------------- order

VariableOrder VariableOrder::ascending(Var num_vars) {
  std::vector<Var> seq(num_vars);
  for (Var v = 0; v < num_vars; ++v) seq[v] = v + 1;
  return from_sequence(std::move(seq));
}

VariableOrder VariableOrder::from_sequence(std::vector<Var> sequence) {
  VariableOrder o;
  const Var n = static_cast<Var>(sequence.size());
  o.rank_.assign(n + 1, kNoRank);
  for (std::uint32_t i = 0; i < n; ++i) {
    Var v = sequence[i];
    if (v == 0 || v > n)
      throw Error(ErrorCode::Precondition,
                  "variable order must be a permutation of 1.." + std::to_string(n));
    if (o.rank_[v] != kNoRank)
      throw Error(ErrorCode::Precondition,
                  "variable " + std::to_string(v) + " repeated in order");
    o.rank_[v] = i;
  }
  o.sequence_ = std::move(sequence);
  return o;
}

std::uint32_t VariableOrder::rank(Var v) const {
  if (!contains(v))
    throw Error(ErrorCode::Precondition,
                "variable " + std::to_string(v) + " is not in the order");
  return rank_[v];
}

// ---------------------------------------------------------------- paths

bool FalsePath::contains_all(const FalsePath &other) const {
  return std::all_of(other.literals.begin(), other.literals.end(), [&](Literal l) {
    return std::find(literals.begin(), literals.end(), l) != literals.end();
  });
}

std::optional<Literal> FalsePath::literal_for(Var v) const {
  for (Literal l : literals)
    if (l.var() == v) return l;
  return std::nullopt;
}

std::string FalsePath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(literals[i].to_dimacs());
  }
  return out;
}

// ---------------------------------------------------------------- store

ObddStore::ObddStore(VariableOrder order)
    : order_(std::move(order)), id_(next_store_id.fetch_add(1)) {
  nodes_.push_back({0, 0, 0}); // false
  nodes_.push_back({0, 1, 1}); // true
}

void ObddStore::check_ref(NodeRef n) const {
  if (n.store_id() != id_)
    throw Error(ErrorCode::StoreMismatch, "node handle belongs to another store");
  if (n.index() >= nodes_.size())
    throw Error(ErrorCode::Precondition, "dangling node handle");
}

Var ObddStore::var(NodeRef n) const {
  check_ref(n);
  if (n.is_terminal()) throw Error(ErrorCode::Precondition, "terminal has no variable");
  return nodes_[n.index()].var;
}

NodeRef ObddStore::low(NodeRef n) const {
  check_ref(n);
  if (n.is_terminal()) throw Error(ErrorCode::Precondition, "terminal has no children");
  return ref(nodes_[n.index()].low);
}

NodeRef ObddStore::high(NodeRef n) const {
  check_ref(n);
  if (n.is_terminal()) throw Error(ErrorCode::Precondition, "terminal has no children");
  return ref(nodes_[n.index()].high);
}

NodeRef ObddStore::make_node(Var v, NodeRef lo, NodeRef hi) {
  check_ref(lo);
  check_ref(hi);
  const std::uint32_t r = order_.rank(v);
  for (NodeRef c : {lo, hi})
    if (!c.is_terminal() && order_.rank(nodes_[c.index()].var) <= r)
      throw Error(ErrorCode::Invariant, "child variable does not follow parent in the order");
  const std::uint64_t key = (static_cast<std::uint64_t>(v) << 42) ^
                            (static_cast<std::uint64_t>(lo.index()) << 21) ^ hi.index();
  // The packed key is only a bucket hint; confirm against the stored triple.
  auto range = unique_.equal_range(key);
  for (auto it = range.first; it != range.second; ++it) {
    const Node &n = nodes_[it->second];
    if (n.var == v && n.low == lo.index() && n.high == hi.index()) return ref(it->second);
  }
  const auto idx = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({v, lo.index(), hi.index()});
  unique_.emplace(key, idx);
  return ref(idx);
}

NodeRef ObddStore::clause_obdd(const Clause &c) {
  std::vector<Literal> lits(c.literals().begin(), c.literals().end());
  std::sort(lits.begin(), lits.end(), [&](Literal a, Literal b) {
    return order_.rank(a.var()) < order_.rank(b.var());
  });
  NodeRef next = false_ref();
  for (auto it = lits.rbegin(); it != lits.rend(); ++it) {
    // The literal being true satisfies the clause; its falsifying branch
    // continues down the chain.
    next = it->positive() ? make_node(it->var(), next, true_ref())
                          : make_node(it->var(), true_ref(), next);
  }
  return next;
}

NodeRef ObddStore::apply_and(NodeRef b1, NodeRef b2) {
  check_ref(b1);
  check_ref(b2);
  memo_.clear();
  NodeRef r = apply_rec(b1, b2);
  memo_.clear();
  return r;
}

NodeRef ObddStore::apply_rec(NodeRef b1, NodeRef b2) {
  if (b1.is_false() || b2.is_false()) return false_ref();
  if (b1.is_true()) return b2;
  if (b2.is_true()) return b1;

  const std::uint64_t key = pair_key(b1.index(), b2.index());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const Node n1 = nodes_[b1.index()];
  const Node n2 = nodes_[b2.index()];
  const std::uint32_t r1 = order_.rank(n1.var);
  const std::uint32_t r2 = order_.rank(n2.var);
  NodeRef out;
  if (r1 == r2) {
    NodeRef hi = apply_rec(ref(n1.high), ref(n2.high));
    NodeRef lo = apply_rec(ref(n1.low), ref(n2.low));
    out = make_node(n1.var, lo, hi);
  } else if (r1 < r2) {
    NodeRef hi = apply_rec(ref(n1.high), b2);
    NodeRef lo = apply_rec(ref(n1.low), b2);
    out = make_node(n1.var, lo, hi);
  } else {
    NodeRef hi = apply_rec(b1, ref(n2.high));
    NodeRef lo = apply_rec(b1, ref(n2.low));
    out = make_node(n2.var, lo, hi);
  }
  memo_.emplace(key, out);
  return out;
}

bool ObddStore::iso(NodeRef b1, NodeRef b2) const {
  check_ref(b1);
  check_ref(b2);
  return b1 == b2;
}

bool ObddStore::iso_structural(NodeRef b1, NodeRef b2) const {
  check_ref(b1);
  check_ref(b2);
  std::unordered_map<std::uint64_t, bool> seen;
  auto rec = [&](auto &&self, std::uint32_t a, std::uint32_t b) -> bool {
    if (a < 2 || b < 2) return a == b;
    const std::uint64_t k = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto it = seen.find(k); it != seen.end()) return it->second;
    const Node &na = nodes_[a];
    const Node &nb = nodes_[b];
    bool eq = na.var == nb.var && self(self, na.low, nb.low) && self(self, na.high, nb.high);
    seen.emplace(k, eq);
    return eq;
  };
  return rec(rec, b1.index(), b2.index());
}

std::vector<NodeRef> ObddStore::reachable(NodeRef b) const {
  check_ref(b);
  std::vector<char> mark(nodes_.size(), 0);
  std::vector<std::uint32_t> stack{b.index()};
  std::vector<NodeRef> out;
  while (!stack.empty()) {
    std::uint32_t i = stack.back();
    stack.pop_back();
    if (i < 2 || mark[i]) continue;
    mark[i] = 1;
    out.push_back(ref(i));
    stack.push_back(nodes_[i].low);
    stack.push_back(nodes_[i].high);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ObddStore::size(NodeRef b) const { return reachable(b).size(); }

std::size_t ObddStore::vertex_count(NodeRef b) const {
  check_ref(b);
  if (b.is_terminal()) return 1;
  bool has_false = false;
  bool has_true = false;
  const auto inner = reachable(b);
  for (NodeRef n : inner) {
    for (std::uint32_t c : {nodes_[n.index()].low, nodes_[n.index()].high}) {
      has_false |= c == 0;
      has_true |= c == 1;
    }
  }
  return inner.size() + (has_false ? 1 : 0) + (has_true ? 1 : 0);
}

bool ObddStore::reaches(NodeRef b, NodeRef p) const {
  check_ref(p);
  if (p.is_terminal()) {
    if (b == p) return true;
    for (NodeRef n : reachable(b))
      if (nodes_[n.index()].low == p.index() || nodes_[n.index()].high == p.index())
        return true;
    return false;
  }
  const auto r = reachable(b);
  return std::binary_search(r.begin(), r.end(), p);
}

EliminationResult ObddStore::eliminate(NodeRef b, NodeRef p) {
  check_ref(b);
  check_ref(p);
  if (p.is_terminal() || !reaches(b, p))
    throw Error(ErrorCode::Precondition, "eliminated node is not an inner node of the diagram");
  const Node target = nodes_[p.index()];
  if (target.low != target.high)
    throw Error(ErrorCode::Precondition, "eliminated node has distinct children");

  EliminationResult res;
  res.event.node = p;
  res.event.var = target.var;
  res.event.child = ref(target.low);
  res.event.root_before = b;
  res.event.size_before = size(b);

  std::unordered_map<std::uint32_t, NodeRef> memo;
  auto rebuild = [&](auto &&self, std::uint32_t i) -> NodeRef {
    if (i < 2) return ref(i);
    if (i == p.index()) return self(self, target.low);
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    const Node n = nodes_[i];
    NodeRef lo = self(self, n.low);
    NodeRef hi = self(self, n.high);
    NodeRef out = (lo.index() == n.low && hi.index() == n.high) ? ref(i) : make_node(n.var, lo, hi);
    memo.emplace(i, out);
    return out;
  };
  res.root = rebuild(rebuild, b.index());
  for (const auto &[i, img] : memo) res.image.emplace(ref(i), img);

  res.event.root_after = res.root;
  res.event.size_after = size(res.root);
  return res;
}

std::optional<NodeRef> ObddStore::next_elimination_candidate(NodeRef b) const {
  std::optional<NodeRef> best;
  std::uint32_t best_rank = 0;
  for (NodeRef n : reachable(b)) { // creation order, so the first of a rank wins ties
    const Node &nd = nodes_[n.index()];
    if (nd.low != nd.high) continue;
    const std::uint32_t r = order_.rank(nd.var);
    if (!best || r > best_rank) {
      best = n;
      best_rank = r;
    }
  }
  return best;
}

ReduceResult ObddStore::reduce(NodeRef b) {
  ReduceResult out{b, {}};
  while (auto p = next_elimination_candidate(out.root)) {
    EliminationResult e = eliminate(out.root, *p);
    out.root = e.root;
    out.events.push_back(e.event);
  }
  return out;
}

// ---------------------------------------------------------------- false paths

std::uint64_t ObddStore::count_false_paths(NodeRef b) const {
  check_ref(b);
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  auto rec = [&](auto &&self, std::uint32_t i) -> std::uint64_t {
    if (i == 0) return 1;
    if (i == 1) return 0;
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    std::uint64_t c = saturating_add(self(self, nodes_[i].low), self(self, nodes_[i].high));
    memo.emplace(i, c);
    return c;
  };
  return rec(rec, b.index());
}

std::uint64_t ObddStore::count_false_paths_through(NodeRef b, NodeRef through) const {
  check_ref(b);
  check_ref(through);
  if (through.is_terminal() || !reaches(b, through)) return 0;
  // Root-to-node path counts over the DAG, in topological (creation) order:
  // children always have smaller creation indices than their parents.
  auto nodes = reachable(b);
  std::unordered_map<std::uint32_t, std::uint64_t> into;
  into[b.index()] = 1;
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    const std::uint64_t c = into[it->index()];
    const Node &n = nodes_[it->index()];
    if (n.low >= 2) into[n.low] = saturating_add(into[n.low], c);
    if (n.high >= 2) into[n.high] = saturating_add(into[n.high], c);
  }
  return saturating_mul(into[through.index()], count_false_paths(through));
}

void ObddStore::check_budget(std::uint64_t count) const {
  if (count > path_budget_)
    throw Error(ErrorCode::PathBudgetExceeded,
                std::to_string(count) + " false paths exceed the budget of " +
                    std::to_string(path_budget_));
}

std::vector<TracedPath> ObddStore::traced_false_paths(NodeRef b) const {
  check_budget(count_false_paths(b));
  std::vector<TracedPath> out;
  TracedPath cur;
  auto rec = [&](auto &&self, std::uint32_t i) -> void {
    if (i == 1) return;
    if (i == 0) {
      out.push_back(cur);
      return;
    }
    const Node n = nodes_[i];
    cur.nodes.push_back(ref(i));
    cur.path.literals.push_back(Literal::neg(n.var));
    self(self, n.low);
    cur.path.literals.back() = Literal::pos(n.var);
    self(self, n.high);
    cur.path.literals.pop_back();
    cur.nodes.pop_back();
  };
  rec(rec, b.index());
  return out;
}

std::vector<FalsePath> ObddStore::false_paths(NodeRef b, std::optional<NodeRef> through) const {
  if (through) {
    check_ref(*through);
    check_budget(count_false_paths_through(b, *through));
  }
  std::vector<FalsePath> out;
  for (auto &t : traced_false_paths(b)) {
    if (through && std::find(t.nodes.begin(), t.nodes.end(), *through) == t.nodes.end())
      continue;
    out.push_back(std::move(t.path));
  }
  return out;
}

bool ObddStore::eval(NodeRef b, const Assignment &a) const {
  check_ref(b);
  std::uint32_t i = b.index();
  while (i >= 2) {
    const Node &n = nodes_[i];
    i = a.value(n.var) ? n.high : n.low;
  }
  return i == 1;
}

std::vector<Var> ObddStore::support(NodeRef b) const {
  std::vector<Var> vs;
  for (NodeRef n : reachable(b)) vs.push_back(nodes_[n.index()].var);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// ---------------------------------------------------------------- export

namespace {
std::string dot_id(std::uint32_t i) {
  if (i == 0) return "f";
  if (i == 1) return "t";
  return "n" + std::to_string(i);
}
std::string dump_id(std::uint32_t i) {
  if (i == 0) return "F";
  if (i == 1) return "T";
  return std::to_string(i);
}
} // namespace

std::string ObddStore::dot(NodeRef b, const std::string &name) const {
  check_ref(b);
  const auto inner = reachable(b);
  bool has_false = b.is_false();
  bool has_true = b.is_true();
  for (NodeRef n : inner) {
    for (std::uint32_t c : {nodes_[n.index()].low, nodes_[n.index()].high}) {
      has_false |= c == 0;
      has_true |= c == 1;
    }
  }
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  if (has_false) os << "  f [label=\"false\", shape=box];\n";
  if (has_true) os << "  t [label=\"true\", shape=box];\n";
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) {
    os << "  " << dot_id(it->index()) << " [label=\"x" << nodes_[it->index()].var
       << "\"];\n";
  }
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) {
    const Node &n = nodes_[it->index()];
    os << "  " << dot_id(it->index()) << " -> " << dot_id(n.high) << " [style=solid];\n";
    os << "  " << dot_id(it->index()) << " -> " << dot_id(n.low) << " [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

std::string ObddStore::dump(NodeRef b) const {
  std::ostringstream os;
  for (NodeRef n : reachable(b)) {
    const Node &nd = nodes_[n.index()];
    os << n.index() << ' ' << nd.var << ' ' << dump_id(nd.low) << ' ' << dump_id(nd.high)
       << '\n';
  }
  return os.str();
}

} // namespace obddres
