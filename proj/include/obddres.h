/* SPDX-License-Identifier: Apache-2.0 */
#ifndef OBDDRES_H
#define OBDDRES_H

/* C interface to the OBDD refutation engine and resolution checker.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through char** are heap-allocated and
 * released with obddres_string_free. Every function that can fail returns an
 * obddres_status; on failure obddres_last_error() describes the problem for
 * the calling thread until its next failing call. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(OBDDRES_BUILDING)
#define OBDDRES_API __attribute__((visibility("default")))
#else
#define OBDDRES_API
#endif

typedef enum obddres_status {
  OBDDRES_OK = 0,
  OBDDRES_E_PARSE = 1,
  OBDDRES_E_NOT_RESOLVABLE = 2,
  OBDDRES_E_TAUTOLOGICAL_RESOLVENT = 3,
  OBDDRES_E_TAUTOLOGICAL_CLAUSE = 4,
  OBDDRES_E_ORACLE_TOO_LARGE = 5,
  OBDDRES_E_PATH_BUDGET = 6,
  OBDDRES_E_PRECONDITION = 7,
  OBDDRES_E_STORE_MISMATCH = 8,
  OBDDRES_E_INVARIANT = 9,
  OBDDRES_E_SAMPLING_BUDGET = 10,
  OBDDRES_E_USAGE = 11,
  OBDDRES_E_IO = 12,
  OBDDRES_E_INTERNAL = 13
} obddres_status;

typedef struct obddres_cnf obddres_cnf;
typedef struct obddres_run obddres_run;

OBDDRES_API const char *obddres_version(void);
OBDDRES_API const char *obddres_status_name(obddres_status status);
/* Message of the calling thread's last failure, "" if none. */
OBDDRES_API const char *obddres_last_error(void);
/* Input line of the last parse failure, 0 if unknown. */
OBDDRES_API size_t obddres_last_error_line(void);
OBDDRES_API void obddres_string_free(char *s);

/* ---- formulas ---- */

OBDDRES_API obddres_status obddres_cnf_parse(const char *text, size_t len, obddres_cnf **out);
OBDDRES_API obddres_status obddres_cnf_read_file(const char *path, obddres_cnf **out);
OBDDRES_API obddres_status obddres_cnf_php(unsigned n, obddres_cnf **out);
OBDDRES_API obddres_status obddres_cnf_php_doubled(unsigned n, obddres_cnf **out);
OBDDRES_API obddres_status obddres_cnf_random_unsat(unsigned vars, size_t clauses, uint64_t seed,
                                                    obddres_cnf **out);
/* "running-example" or "eight-clause-example". */
OBDDRES_API obddres_status obddres_cnf_fixture(const char *name, obddres_cnf **out);
OBDDRES_API obddres_status obddres_cnf_to_dimacs(const obddres_cnf *cnf, char **out);
OBDDRES_API size_t obddres_cnf_num_vars(const obddres_cnf *cnf);
OBDDRES_API size_t obddres_cnf_num_clauses(const obddres_cnf *cnf);
/* Ingestion warnings (dropped tautologies), one per line. */
OBDDRES_API obddres_status obddres_cnf_warnings(const obddres_cnf *cnf, char **out);
/* Exhaustive check; *satisfiable receives 1 or 0. */
OBDDRES_API obddres_status obddres_cnf_brute_force(const obddres_cnf *cnf, unsigned oracle_limit,
                                                   int *satisfiable);
OBDDRES_API void obddres_cnf_free(obddres_cnf *cnf);

/* ---- refutation ---- */

typedef enum obddres_schedule_kind {
  OBDDRES_SCHEDULE_LINEAR = 0,
  OBDDRES_SCHEDULE_BALANCED = 1,
  OBDDRES_SCHEDULE_TEXT = 2 /* s-expression in schedule_text, e.g. "((1 2) (3 4))" */
} obddres_schedule_kind;

typedef struct obddres_options {
  const uint32_t *order; /* permutation of 1..order_len; NULL for ascending */
  size_t order_len;
  obddres_schedule_kind schedule;
  const char *schedule_text;
  uint64_t path_budget;  /* 0 selects the default of 2^20 */
  int verify_invariants; /* nonzero attaches the exhaustive invariant monitor */
  unsigned oracle_limit; /* variables; 0 selects 12 */
} obddres_options;

OBDDRES_API void obddres_options_init(obddres_options *options);

/* Runs a complete OBDD refutation. A satisfiable input is not a failure:
 * the summary then reports refuted = 0 and no proof is available. */
OBDDRES_API obddres_status obddres_refute(const obddres_cnf *cnf, const obddres_options *options,
                                          obddres_run **out);
OBDDRES_API void obddres_run_free(obddres_run *run);

typedef struct obddres_summary {
  int refuted;
  size_t m;          /* input clauses */
  size_t n;          /* sum of all sizes along the run, reduced forms included */
  size_t n_sequence; /* sum of sizes of the 2m-1 sequence members */
  size_t obdds;
  size_t eliminations;
  size_t derived; /* resolution steps in the proof, 0 when satisfiable */
  size_t proof_steps;
  int bounds_ok;  /* derived <= m*n and, when m <= n, derived <= n*n */
  int events_ok;  /* every elimination within its per-event bounds */
  size_t violations;
  size_t warnings;
} obddres_summary;

OBDDRES_API obddres_status obddres_run_summary(const obddres_run *run, obddres_summary *out);
/* Resolution trace, "id lits 0 parents 0" per line. Precondition when not refuted. */
OBDDRES_API obddres_status obddres_run_trace(const obddres_run *run, char **out);
OBDDRES_API obddres_status obddres_run_script_json(const obddres_run *run, char **out);
OBDDRES_API obddres_status obddres_run_stats_json(const obddres_run *run, char **out);
/* GraphViz of OBDD `index` (1-based sequence position); `reduced` selects
 * the form after reduction. */
OBDDRES_API obddres_status obddres_run_dot(const obddres_run *run, size_t index, int reduced,
                                           char **out);
/* Invariant violations recorded by the monitor, one "invariant obdd detail" line each. */
OBDDRES_API obddres_status obddres_run_violations(const obddres_run *run, char **out);
/* Runs the independent checker on the run's own proof. */
OBDDRES_API obddres_status obddres_run_check(const obddres_run *run, int *ok, char **verdict);

/* ---- checking ---- */

/* Parses `trace` and checks it against `cnf`. A malformed trace returns
 * OBDDRES_E_PARSE; otherwise *ok is 1 or 0 and *verdict holds "OK" or
 * "FAIL step N: reason". `verdict` may be NULL. */
OBDDRES_API obddres_status obddres_check_trace(const obddres_cnf *cnf, const char *trace,
                                               size_t len, int *ok, char **verdict);

#ifdef __cplusplus
}
#endif

#endif /* OBDDRES_H */
