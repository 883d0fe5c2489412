// SPDX-License-Identifier: Apache-2.0
#define OBDDRES_BUILDING 1
#include "obddres.h"

#include "obddres/error.hpp"
#include "obddres/families.hpp"
#include "obddres/proof.hpp"
#include "obddres/refutation.hpp"
#include "obddres/serialize.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>

struct obddres_cnf {
  obddres::Cnf cnf;
};

struct obddres_run {
  obddres::Cnf cnf;
  obddres::RefutationScript script;
  std::optional<obddres::Translation> translation;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;

obddres_status fail(obddres_status s, const std::string &msg, std::size_t line = 0) {
  g_error = msg;
  g_error_line = line;
  return s;
}

obddres_status map_code(obddres::ErrorCode c) {
  using obddres::ErrorCode;
  switch (c) {
  case ErrorCode::Parse: return OBDDRES_E_PARSE;
  case ErrorCode::NotResolvable: return OBDDRES_E_NOT_RESOLVABLE;
  case ErrorCode::TautologicalResolvent: return OBDDRES_E_TAUTOLOGICAL_RESOLVENT;
  case ErrorCode::TautologicalClause: return OBDDRES_E_TAUTOLOGICAL_CLAUSE;
  case ErrorCode::OracleTooLarge: return OBDDRES_E_ORACLE_TOO_LARGE;
  case ErrorCode::PathBudgetExceeded: return OBDDRES_E_PATH_BUDGET;
  case ErrorCode::Precondition: return OBDDRES_E_PRECONDITION;
  case ErrorCode::StoreMismatch: return OBDDRES_E_STORE_MISMATCH;
  case ErrorCode::Invariant: return OBDDRES_E_INVARIANT;
  case ErrorCode::SamplingBudgetExhausted: return OBDDRES_E_SAMPLING_BUDGET;
  case ErrorCode::Usage: return OBDDRES_E_USAGE;
  }
  return OBDDRES_E_INTERNAL;
}

// Runs `f`, turning exceptions into status codes.
template <class F> obddres_status guarded(F &&f) {
  try {
    f();
    return OBDDRES_OK;
  } catch (const obddres::Error &e) {
    return fail(map_code(e.code()), e.what(), e.line());
  } catch (const std::bad_alloc &) {
    return fail(OBDDRES_E_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(OBDDRES_E_INTERNAL, e.what());
  }
}

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

obddres_status null_arg(const char *what) {
  return fail(OBDDRES_E_USAGE, std::string(what) + " must not be null");
}

template <class F> obddres_status emit_cnf(obddres_cnf **out, F &&make) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new obddres_cnf{make()}; });
}

obddres_status need_proof(const obddres_run *run) {
  if (!run->translation)
    return fail(OBDDRES_E_PRECONDITION, "the formula was not refuted; no proof exists");
  return OBDDRES_OK;
}

} // namespace

extern "C" {

OBDDRES_API const char *obddres_version(void) { return "1.0.0"; }

OBDDRES_API const char *obddres_status_name(obddres_status s) {
  switch (s) {
  case OBDDRES_OK: return "OK";
  case OBDDRES_E_PARSE: return "ParseError";
  case OBDDRES_E_NOT_RESOLVABLE: return "NotResolvable";
  case OBDDRES_E_TAUTOLOGICAL_RESOLVENT: return "TautologicalResolvent";
  case OBDDRES_E_TAUTOLOGICAL_CLAUSE: return "TautologicalClause";
  case OBDDRES_E_ORACLE_TOO_LARGE: return "OracleTooLarge";
  case OBDDRES_E_PATH_BUDGET: return "PathBudgetExceeded";
  case OBDDRES_E_PRECONDITION: return "PreconditionViolation";
  case OBDDRES_E_STORE_MISMATCH: return "StoreMismatch";
  case OBDDRES_E_INVARIANT: return "InvariantViolation";
  case OBDDRES_E_SAMPLING_BUDGET: return "SamplingBudgetExhausted";
  case OBDDRES_E_USAGE: return "UsageError";
  case OBDDRES_E_IO: return "IoError";
  case OBDDRES_E_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

OBDDRES_API const char *obddres_last_error(void) { return g_error.c_str(); }
OBDDRES_API size_t obddres_last_error_line(void) { return g_error_line; }
OBDDRES_API void obddres_string_free(char *s) { std::free(s); }

OBDDRES_API obddres_status obddres_cnf_parse(const char *text, size_t len, obddres_cnf **out) {
  if (!text && len) return null_arg("text");
  return emit_cnf(out, [&] { return obddres::parse_dimacs(std::string_view(text ? text : "", len)); });
}

OBDDRES_API obddres_status obddres_cnf_read_file(const char *path, obddres_cnf **out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(OBDDRES_E_IO, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return emit_cnf(out, [&] { return obddres::parse_dimacs(text); });
}

OBDDRES_API obddres_status obddres_cnf_php(unsigned n, obddres_cnf **out) {
  return emit_cnf(out, [&] { return obddres::gen_php(n); });
}

OBDDRES_API obddres_status obddres_cnf_php_doubled(unsigned n, obddres_cnf **out) {
  return emit_cnf(out, [&] { return obddres::gen_php_doubled(n); });
}

OBDDRES_API obddres_status obddres_cnf_random_unsat(unsigned vars, size_t clauses, uint64_t seed,
                                                    obddres_cnf **out) {
  return emit_cnf(out, [&] { return obddres::gen_random_unsat(vars, clauses, seed); });
}

OBDDRES_API obddres_status obddres_cnf_fixture(const char *name, obddres_cnf **out) {
  if (!name) return null_arg("name");
  return emit_cnf(out, [&] { return obddres::fixture(name); });
}

OBDDRES_API obddres_status obddres_cnf_to_dimacs(const obddres_cnf *cnf, char **out) {
  if (!cnf) return null_arg("cnf");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup(obddres::write_dimacs(cnf->cnf)); });
}

OBDDRES_API size_t obddres_cnf_num_vars(const obddres_cnf *cnf) {
  return cnf ? cnf->cnf.max_var() : 0;
}

OBDDRES_API size_t obddres_cnf_num_clauses(const obddres_cnf *cnf) {
  return cnf ? cnf->cnf.size() : 0;
}

OBDDRES_API obddres_status obddres_cnf_warnings(const obddres_cnf *cnf, char **out) {
  if (!cnf) return null_arg("cnf");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::string s;
    for (const auto &w : cnf->cnf.warnings()) s += w + "\n";
    *out = dup(s);
  });
}

OBDDRES_API obddres_status obddres_cnf_brute_force(const obddres_cnf *cnf, unsigned oracle_limit,
                                                   int *satisfiable) {
  if (!cnf) return null_arg("cnf");
  if (!satisfiable) return null_arg("satisfiable");
  return guarded([&] {
    const unsigned limit = oracle_limit ? oracle_limit : obddres::kDefaultOracleLimit;
    *satisfiable = obddres::brute_force_status(cnf->cnf, limit).satisfiable ? 1 : 0;
  });
}

OBDDRES_API void obddres_cnf_free(obddres_cnf *cnf) { delete cnf; }

OBDDRES_API void obddres_options_init(obddres_options *o) {
  if (!o) return;
  *o = obddres_options{};
  o->schedule = OBDDRES_SCHEDULE_LINEAR;
}

OBDDRES_API obddres_status obddres_refute(const obddres_cnf *cnf, const obddres_options *options,
                                          obddres_run **out) {
  if (!cnf) return null_arg("cnf");
  if (!out) return null_arg("out");
  *out = nullptr;
  obddres_options o;
  obddres_options_init(&o);
  if (options) o = *options;

  return guarded([&] {
    obddres::RunOptions ro;
    if (o.order) ro.order = obddres::VariableOrder::from_sequence(
                     std::vector<obddres::Var>(o.order, o.order + o.order_len));
    const std::size_t m = cnf->cnf.size();
    switch (o.schedule) {
    case OBDDRES_SCHEDULE_LINEAR: break;
    case OBDDRES_SCHEDULE_BALANCED: ro.schedule = obddres::JoinSchedule::balanced(m); break;
    case OBDDRES_SCHEDULE_TEXT:
      if (!o.schedule_text) throw obddres::Error(obddres::ErrorCode::Usage, "schedule_text is null");
      ro.schedule = obddres::JoinSchedule::parse(o.schedule_text, m);
      break;
    default: throw obddres::Error(obddres::ErrorCode::Usage, "unknown schedule kind");
    }
    if (o.path_budget) ro.path_budget = o.path_budget;
    ro.verify_invariants = o.verify_invariants != 0;
    if (o.oracle_limit) ro.oracle_limit = o.oracle_limit;

    auto run = std::make_unique<obddres_run>();
    run->cnf = cnf->cnf;
    run->script = obddres::run_refutation(cnf->cnf, ro);
    if (run->script.outcome == obddres::Outcome::Refuted)
      run->translation = obddres::translate(run->script);
    *out = run.release();
  });
}

OBDDRES_API void obddres_run_free(obddres_run *run) { delete run; }

OBDDRES_API obddres_status obddres_run_summary(const obddres_run *run, obddres_summary *out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  const auto &s = run->script;
  *out = obddres_summary{};
  out->refuted = s.outcome == obddres::Outcome::Refuted;
  out->m = s.m;
  out->n = s.size_run();
  out->n_sequence = s.size_sequence_sum();
  out->obdds = s.obdds.size();
  out->eliminations = s.certificates.size();
  out->events_ok = 1;
  for (const auto &c : s.certificates)
    if (!c.within_bounds()) out->events_ok = 0;
  if (run->translation) {
    out->derived = run->translation->bounds.derived;
    out->proof_steps = run->translation->proof.size();
    out->bounds_ok = run->translation->bounds.ok();
  } else {
    out->bounds_ok = 1;
  }
  out->violations = s.violations.size();
  out->warnings = s.warnings.size() + run->cnf.warnings().size();
  return OBDDRES_OK;
}

OBDDRES_API obddres_status obddres_run_trace(const obddres_run *run, char **out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  if (auto s = need_proof(run)) return s;
  return guarded([&] { *out = dup(obddres::write_trace(run->translation->proof)); });
}

OBDDRES_API obddres_status obddres_run_script_json(const obddres_run *run, char **out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup(obddres::script_to_json(run->script)); });
}

OBDDRES_API obddres_status obddres_run_stats_json(const obddres_run *run, char **out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup(obddres::stats_to_json(run->script, run->translation)); });
}

OBDDRES_API obddres_status obddres_run_dot(const obddres_run *run, size_t index, int reduced,
                                           char **out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  const auto &obdds = run->script.obdds;
  if (index == 0 || index > obdds.size())
    return fail(OBDDRES_E_USAGE, "OBDD index " + std::to_string(index) + " out of range 1.." +
                                     std::to_string(obdds.size()));
  const auto &e = obdds[index - 1];
  return guarded([&] {
    *out = dup(run->script.store->dot(reduced ? e.reduced : e.obdd, "B" + std::to_string(index)));
  });
}

OBDDRES_API obddres_status obddres_run_violations(const obddres_run *run, char **out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::string s;
    for (const auto &v : run->script.violations)
      s += v.invariant + " " + std::to_string(v.obdd_index) + " " + v.detail + "\n";
    *out = dup(s);
  });
}

OBDDRES_API obddres_status obddres_run_check(const obddres_run *run, int *ok, char **verdict) {
  if (!run) return null_arg("run");
  if (!ok) return null_arg("ok");
  if (auto s = need_proof(run)) return s;
  return guarded([&] {
    const auto v = obddres::check(run->cnf, run->translation->proof);
    *ok = v.ok ? 1 : 0;
    if (verdict) *verdict = dup(v.to_string());
  });
}

OBDDRES_API obddres_status obddres_check_trace(const obddres_cnf *cnf, const char *trace,
                                               size_t len, int *ok, char **verdict) {
  if (!cnf) return null_arg("cnf");
  if (!trace && len) return null_arg("trace");
  if (!ok) return null_arg("ok");
  return guarded([&] {
    const auto proof = obddres::read_trace(std::string_view(trace ? trace : "", len));
    const auto v = obddres::check(cnf->cnf, proof);
    *ok = v.ok ? 1 : 0;
    if (verdict) *verdict = dup(v.to_string());
  });
}

} // extern "C"
