// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library through the C header alone.
#include "obddres.h"

#include <gtest/gtest.h>

#include <cstring>
#include <string>

namespace {

const char *kRunning = "p cnf 3 4\n1 -2 0\n2 3 0\n2 -3 0\n-1 0\n";

std::string take(char *s) {
  std::string out = s ? s : "";
  obddres_string_free(s);
  return out;
}

obddres_cnf *parse(const char *text) {
  obddres_cnf *cnf = nullptr;
  EXPECT_EQ(obddres_cnf_parse(text, std::strlen(text), &cnf), OBDDRES_OK) << obddres_last_error();
  return cnf;
}

} // namespace

TEST(CApi, RefuteRunningExample) {
  obddres_cnf *cnf = parse(kRunning);
  EXPECT_EQ(obddres_cnf_num_vars(cnf), 3u);
  EXPECT_EQ(obddres_cnf_num_clauses(cnf), 4u);

  obddres_run *run = nullptr;
  ASSERT_EQ(obddres_refute(cnf, nullptr, &run), OBDDRES_OK);
  obddres_summary s;
  ASSERT_EQ(obddres_run_summary(run, &s), OBDDRES_OK);
  EXPECT_EQ(s.refuted, 1);
  EXPECT_EQ(s.m, 4u);
  EXPECT_EQ(s.n, 18u);
  EXPECT_EQ(s.n_sequence, 16u);
  EXPECT_EQ(s.obdds, 7u);
  EXPECT_EQ(s.eliminations, 3u);
  EXPECT_EQ(s.derived, 3u);
  EXPECT_EQ(s.bounds_ok, 1);
  EXPECT_EQ(s.events_ok, 1);

  char *trace = nullptr;
  ASSERT_EQ(obddres_run_trace(run, &trace), OBDDRES_OK);
  const std::string t = take(trace);
  EXPECT_NE(t.find("7 0 4 6 0\n"), std::string::npos);

  int ok = 0;
  char *verdict = nullptr;
  ASSERT_EQ(obddres_check_trace(cnf, t.data(), t.size(), &ok, &verdict), OBDDRES_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(take(verdict), "OK");
  ASSERT_EQ(obddres_run_check(run, &ok, nullptr), OBDDRES_OK);
  EXPECT_EQ(ok, 1);

  char *json = nullptr;
  ASSERT_EQ(obddres_run_script_json(run, &json), OBDDRES_OK);
  EXPECT_NE(take(json).find("\"outcome\": \"refuted\""), std::string::npos);
  ASSERT_EQ(obddres_run_stats_json(run, &json), OBDDRES_OK);
  EXPECT_NE(take(json).find("\"derived\": 3"), std::string::npos);

  char *dot = nullptr;
  ASSERT_EQ(obddres_run_dot(run, 1, 0, &dot), OBDDRES_OK);
  EXPECT_EQ(take(dot).rfind("digraph B1 {", 0), 0u);
  EXPECT_EQ(obddres_run_dot(run, 8, 0, &dot), OBDDRES_E_USAGE);

  obddres_run_free(run);
  obddres_cnf_free(cnf);
}

TEST(CApi, Options) {
  obddres_cnf *cnf = nullptr;
  ASSERT_EQ(obddres_cnf_php(2, &cnf), OBDDRES_OK);
  obddres_options o;
  obddres_options_init(&o);
  const uint32_t order[] = {6, 5, 4, 3, 2, 1};
  o.order = order;
  o.order_len = 6;
  o.schedule = OBDDRES_SCHEDULE_TEXT;
  o.schedule_text = "((((((((1 2) 4) 5) 6) 7) 8) 9) 3)";
  obddres_run *run = nullptr;
  ASSERT_EQ(obddres_refute(cnf, &o, &run), OBDDRES_OK) << obddres_last_error();
  int ok = 0;
  ASSERT_EQ(obddres_run_check(run, &ok, nullptr), OBDDRES_OK);
  EXPECT_EQ(ok, 1);
  obddres_run_free(run);

  o.schedule_text = "((1 2) 3)";
  EXPECT_EQ(obddres_refute(cnf, &o, &run), OBDDRES_E_PARSE);
  EXPECT_EQ(run, nullptr);

  obddres_options_init(&o);
  o.path_budget = 2;
  EXPECT_EQ(obddres_refute(cnf, &o, &run), OBDDRES_E_PATH_BUDGET);
  EXPECT_STRNE(obddres_last_error(), "");
  obddres_cnf_free(cnf);
}

TEST(CApi, SatisfiableHasNoProof) {
  obddres_cnf *cnf = parse("p cnf 2 1\n1 2 0\n");
  obddres_run *run = nullptr;
  ASSERT_EQ(obddres_refute(cnf, nullptr, &run), OBDDRES_OK);
  obddres_summary s;
  obddres_run_summary(run, &s);
  EXPECT_EQ(s.refuted, 0);
  char *trace = nullptr;
  EXPECT_EQ(obddres_run_trace(run, &trace), OBDDRES_E_PRECONDITION);
  EXPECT_EQ(trace, nullptr);
  obddres_run_free(run);
  obddres_cnf_free(cnf);
}

TEST(CApi, Errors) {
  obddres_cnf *cnf = nullptr;
  const char *bad = "p cnf 2 1\n1 3 0\n";
  EXPECT_EQ(obddres_cnf_parse(bad, std::strlen(bad), &cnf), OBDDRES_E_PARSE);
  EXPECT_EQ(cnf, nullptr);
  EXPECT_EQ(obddres_last_error_line(), 2u);
  EXPECT_STREQ(obddres_status_name(OBDDRES_E_PARSE), "ParseError");

  EXPECT_EQ(obddres_cnf_random_unsat(25, 10, 1, &cnf), OBDDRES_E_ORACLE_TOO_LARGE);
  EXPECT_EQ(obddres_cnf_fixture("missing", &cnf), OBDDRES_E_USAGE);
  EXPECT_EQ(obddres_cnf_read_file("/nonexistent/x.cnf", &cnf), OBDDRES_E_IO);
  EXPECT_EQ(obddres_refute(nullptr, nullptr, nullptr), OBDDRES_E_USAGE);

  cnf = parse(kRunning);
  int ok = 1;
  const char *trace = "1 1 -2 0 0\n2 0 1 99 0\n";
  EXPECT_EQ(obddres_check_trace(cnf, trace, std::strlen(trace), &ok, nullptr), OBDDRES_E_PARSE);
  const char *wrong = "1 1 -2 0 0\n2 2 3 0 0\n3 1 0 1 2 0\n";
  char *verdict = nullptr;
  EXPECT_EQ(obddres_check_trace(cnf, wrong, std::strlen(wrong), &ok, &verdict), OBDDRES_OK);
  EXPECT_EQ(ok, 0);
  EXPECT_EQ(take(verdict), "FAIL step 3: not a valid resolvent");
  obddres_cnf_free(cnf);
}

TEST(CApi, Generators) {
  obddres_cnf *cnf = nullptr;
  ASSERT_EQ(obddres_cnf_php_doubled(2, &cnf), OBDDRES_OK);
  EXPECT_EQ(obddres_cnf_num_clauses(cnf), 18u);
  int sat = 1;
  ASSERT_EQ(obddres_cnf_brute_force(cnf, 0, &sat), OBDDRES_OK);
  EXPECT_EQ(sat, 0);
  obddres_cnf_free(cnf);

  ASSERT_EQ(obddres_cnf_fixture("running-example", &cnf), OBDDRES_OK);
  char *text = nullptr;
  ASSERT_EQ(obddres_cnf_to_dimacs(cnf, &text), OBDDRES_OK);
  EXPECT_EQ(take(text), std::string("c running example\n") + kRunning);
  obddres_cnf_free(cnf);
}
