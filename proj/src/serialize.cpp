// SPDX-License-Identifier: Apache-2.0
#include "obddres/serialize.hpp"

#include <json.hpp>

#include <algorithm>

namespace obddres {

using nlohmann::ordered_json;

namespace {

ordered_json lits(const Clause &c) {
  ordered_json out = ordered_json::array();
  for (Literal l : c.literals()) out.push_back(l.to_dimacs());
  return out;
}

ordered_json opt_id(const std::optional<ClauseId> &id) {
  return id ? ordered_json(id->value) : ordered_json(nullptr);
}

ordered_json certificate_json(const EliminationCertificate &c) {
  ordered_json j;
  j["obdd"] = c.obdd_index;
  j["node"] = c.node.index();
  j["var"] = c.var;
  j["size_before"] = c.size_before;
  j["size_after"] = c.size_after;
  j["false_paths"] = c.false_paths;
  j["tau"] = c.tau;
  j["cls"] = c.cls_count;
  j["bound"] = c.bound();
  j["refined_bound"] = c.refined_bound();
  j["pairs"] = ordered_json::array();
  for (const PathPair &p : c.pairs)
    j["pairs"].push_back({{"negative", p.negative.to_string()},
                          {"positive", p.positive.to_string()},
                          {"merged", p.merged.to_string()},
                          {"negative_clause", p.negative_clause.value},
                          {"positive_clause", p.positive_clause.value}});
  j["resolvents"] = ordered_json::array();
  for (const EmittedResolvent &r : c.resolvents)
    j["resolvents"].push_back({{"id", r.id.value},
                               {"positive_parent", r.positive_parent.value},
                               {"negative_parent", r.negative_parent.value},
                               {"pair", r.pair},
                               {"reused", r.reused}});
  j["skips"] = ordered_json::array();
  for (const GuardSkip &s : c.skips)
    j["skips"].push_back({{"pair", s.pair}, {"guard", s.guard.value}});
  return j;
}

const char *outcome_name(Outcome o) { return o == Outcome::Refuted ? "refuted" : "satisfiable"; }

} // namespace

std::string script_to_json(const RefutationScript &s) {
  ordered_json j;
  j["outcome"] = outcome_name(s.outcome);
  j["m"] = s.m;
  j["schedule"] = s.schedule;
  j["sizes"] = s.size_sequence();
  j["n"] = s.size_run();
  j["n_sequence"] = s.size_sequence_sum();
  j["first_false"] = s.first_false ? ordered_json(*s.first_false) : ordered_json(nullptr);
  j["empty_clause"] = opt_id(s.empty_clause);

  j["clauses"] = ordered_json::array();
  for (std::uint32_t i = 1; i <= s.db.size(); ++i) {
    const ClauseEntry &e = s.db.entry(ClauseId(i));
    ordered_json c{{"id", i}, {"lits", lits(e.clause)}};
    if (e.origin == ClauseOrigin::Axiom) {
      c["origin"] = "axiom";
    } else {
      c["origin"] = "resolvent";
      c["parents"] = {e.left.value, e.right.value};
    }
    j["clauses"].push_back(std::move(c));
  }

  j["obdds"] = ordered_json::array();
  for (const ObddEntry &e : s.obdds) {
    ordered_json o{{"index", e.index}};
    if (e.kind == ObddEntry::Kind::Axiom) {
      o["kind"] = "axiom";
      o["clause"] = e.clause.value;
    } else {
      o["kind"] = "join";
      o["left"] = e.left;
      o["right"] = e.right;
    }
    o["size"] = e.size;
    o["reduced_size"] = e.reduced_size;
    o["certificates"] = ordered_json::array();
    for (std::size_t k = 0; k < e.num_certificates; ++k)
      o["certificates"].push_back(e.first_certificate + k);
    j["obdds"].push_back(std::move(o));
  }

  j["steps"] = ordered_json::array();
  for (const StepRecord &r : s.steps) {
    switch (r.kind) {
    case StepRecord::Kind::Axiom: j["steps"].push_back({{"kind", "axiom"}, {"obdd", r.ref}}); break;
    case StepRecord::Kind::Join: j["steps"].push_back({{"kind", "join"}, {"obdd", r.ref}}); break;
    case StepRecord::Kind::Eliminate:
      j["steps"].push_back({{"kind", "eliminate"}, {"certificate", r.ref}});
      break;
    }
  }

  j["certificates"] = ordered_json::array();
  for (const EliminationCertificate &c : s.certificates) j["certificates"].push_back(certificate_json(c));
  j["warnings"] = s.warnings;
  j["violations"] = ordered_json::array();
  for (const Violation &v : s.violations)
    j["violations"].push_back({{"invariant", v.invariant}, {"obdd", v.obdd_index}, {"detail", v.detail}});
  return j.dump(2) + "\n";
}

std::string stats_to_json(const RefutationScript &s, const std::optional<Translation> &t) {
  ordered_json j;
  j["outcome"] = outcome_name(s.outcome);
  j["m"] = s.m;
  j["n"] = s.size_run();
  j["n_sequence"] = s.size_sequence_sum();
  j["sizes"] = s.size_sequence();
  j["obdds"] = s.obdds.size();
  j["eliminations"] = s.certificates.size();

  std::size_t max_diff = 0;
  ordered_json slack = ordered_json::array();
  for (const EliminationCertificate &c : s.certificates) {
    max_diff = std::max(max_diff, c.cls_count);
    const auto used = static_cast<long long>(c.resolvents.size());
    slack.push_back({{"obdd", c.obdd_index},
                     {"var", c.var},
                     {"resolvents", c.resolvents.size()},
                     {"slack", static_cast<long long>(c.bound()) - used},
                     {"refined_slack", static_cast<long long>(c.refined_bound()) - used}});
  }
  j["max_profile_difference"] = max_diff;
  j["events"] = std::move(slack);

  if (t) {
    const BoundReport &b = t->bounds;
    j["proof"] = {{"steps", t->proof.size()},
                  {"derived", b.derived},
                  {"m_times_n", b.m * b.n},
                  {"n_squared", b.n * b.n},
                  {"within_mn", b.within_mn},
                  {"n_squared_applies", b.n_squared_applies},
                  {"within_n_squared", b.within_n_squared},
                  {"within_mn_sequence", b.within_mn_sequence},
                  {"n_squared_applies_sequence", b.n_squared_applies_sequence},
                  {"within_n_squared_sequence", b.within_n_squared_sequence},
                  {"bounds_ok", b.ok()}};
  }
  j["warnings"] = s.warnings;
  j["violations"] = s.violations.size();
  return j.dump(2) + "\n";
}

std::string annotation_to_json(const ObddStore &store, const ClauseDb &db, const Annotation &a) {
  ordered_json j;
  j["root"] = a.root().index();
  ordered_json f = ordered_json::object();
  for (const auto &alpha : store.false_paths(a.root())) {
    const ClauseId c = a.at(alpha);
    f[alpha.to_string()] = c.value;
  }
  j["f"] = std::move(f);
  j["scope"] = ordered_json::array();
  for (ClauseId id : a.scope()) j["scope"].push_back({{"id", id.value}, {"lits", lits(db.clause(id))}});
  j["profiles"] = ordered_json::array();
  for (const auto &[node, p] : profile_all(store, a)) {
    ordered_json cls = ordered_json::array();
    for (ClauseId c : p.cls) cls.push_back(c.value);
    j["profiles"].push_back({{"node", node.index()},
                             {"var", store.var(node)},
                             {"false_paths", p.false_path_count},
                             {"tau", p.tau},
                             {"cls", std::move(cls)},
                             {"difference", p.difference()}});
  }
  return j.dump(2) + "\n";
}

std::string bench_csv_row(const BenchRow &r) {
  return r.instance + "," + std::to_string(r.m) + "," + std::to_string(r.n) + "," +
         std::to_string(r.derived) + "," + std::to_string(r.m * r.n) + "," +
         std::to_string(r.n * r.n);
}

} // namespace obddres
