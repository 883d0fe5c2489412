// SPDX-License-Identifier: Apache-2.0
// obddres: command line front end over the C API.
//
// Exit codes: 0 success (a satisfiable input is reported, not an error),
// 1 check, bound or invariant failure, 2 usage or parse error, 3 budget.

#include <algorithm>
#include "obddres.h"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kBudget = 3 };

int exit_for(obddres_status s) {
  switch (s) {
  case OBDDRES_OK: return kOk;
  case OBDDRES_E_PATH_BUDGET:
  case OBDDRES_E_SAMPLING_BUDGET:
  case OBDDRES_E_ORACLE_TOO_LARGE: return kBudget;
  case OBDDRES_E_PARSE:
  case OBDDRES_E_USAGE:
  case OBDDRES_E_IO: return kUsage;
  default: return kFail;
  }
}

int report(obddres_status s) {
  std::cerr << "error: " << obddres_status_name(s) << ": " << obddres_last_error();
  if (obddres_last_error_line()) std::cerr << " (line " << obddres_last_error_line() << ")";
  std::cerr << "\n";
  return exit_for(s);
}

// Owns a string returned by the library.
struct Str {
  char *p = nullptr;
  ~Str() { obddres_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Cnf {
  obddres_cnf *p = nullptr;
  ~Cnf() { obddres_cnf_free(p); }
};

struct Run {
  obddres_run *p = nullptr;
  ~Run() { obddres_run_free(p); }
};

bool write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parses "a..b" or a single number.
bool parse_range(const std::string &text, unsigned long long &lo, unsigned long long &hi) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      lo = hi = std::stoull(text);
    } else {
      lo = std::stoull(text.substr(0, dots));
      hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception &) {
    return false;
  }
  return lo <= hi;
}

std::vector<uint32_t> parse_order(const std::string &text) {
  std::vector<uint32_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(static_cast<uint32_t>(std::stoul(item)));
  return out;
}

struct RefuteArgs {
  std::string cnf;
  std::string order = "asc";
  std::string schedule = "linear";
  std::string proof;
  std::string script;
  std::string dot_dir;
  std::string stats;
  bool check = false;
  bool oracle_verify = false;
  unsigned oracle_limit = 12;
  unsigned long long path_budget = 0;
};

int cmd_refute(const RefuteArgs &a) {
  Cnf cnf;
  if (auto s = obddres_cnf_read_file(a.cnf.c_str(), &cnf.p)) return report(s);
  {
    Str w;
    obddres_cnf_warnings(cnf.p, &w.p);
    if (!w.str().empty()) std::cerr << "warning: " << w.str();
  }

  obddres_options o;
  obddres_options_init(&o);
  std::vector<uint32_t> order;
  if (a.order != "asc") {
    try {
      order = parse_order(a.order);
    } catch (const std::exception &) {
      order.clear();
    }
    std::vector<uint32_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == obddres_cnf_num_vars(cnf.p);
    for (std::size_t i = 0; perm && i < sorted.size(); ++i) perm = sorted[i] == i + 1;
    if (!perm) {
      std::cerr << "error: --order takes 'asc' or a comma-separated permutation of 1.."
                << obddres_cnf_num_vars(cnf.p) << "\n";
      return kUsage;
    }
    o.order = order.data();
    o.order_len = order.size();
  }
  std::string schedule_text;
  if (a.schedule == "linear") {
    o.schedule = OBDDRES_SCHEDULE_LINEAR;
  } else if (a.schedule == "balanced") {
    o.schedule = OBDDRES_SCHEDULE_BALANCED;
  } else {
    if (a.schedule.starts_with("(")) {
      schedule_text = a.schedule;
    } else if (auto text = read_file(a.schedule)) {
      schedule_text = *text;
    } else {
      std::cerr << "error: cannot read schedule file " << a.schedule << "\n";
      return kUsage;
    }
    o.schedule = OBDDRES_SCHEDULE_TEXT;
    o.schedule_text = schedule_text.c_str();
  }
  o.verify_invariants = a.oracle_verify;
  o.oracle_limit = a.oracle_limit;
  o.path_budget = a.path_budget;

  Run run;
  if (auto s = obddres_refute(cnf.p, &o, &run.p)) return report(s);
  obddres_summary sum;
  obddres_run_summary(run.p, &sum);

  int code = kOk;
  std::cout << "outcome " << (sum.refuted ? "refuted" : "satisfiable") << "\n"
            << "m " << sum.m << "\n"
            << "n " << sum.n << "\n"
            << "n_sequence " << sum.n_sequence << "\n"
            << "obdds " << sum.obdds << "\n"
            << "eliminations " << sum.eliminations << "\n";
  if (sum.refuted) {
    std::cout << "derived " << sum.derived << "\n"
              << "bounds " << (sum.bounds_ok && sum.events_ok ? "ok" : "FAIL") << "\n";
    if (!sum.bounds_ok || !sum.events_ok) code = kFail;
  }

  if (!a.proof.empty()) {
    Str t;
    if (auto s = obddres_run_trace(run.p, &t.p)) return report(s);
    if (!write_file(a.proof, t.str())) return kUsage;
  }
  if (!a.script.empty()) {
    Str j;
    if (auto s = obddres_run_script_json(run.p, &j.p)) return report(s);
    if (!write_file(a.script, j.str())) return kUsage;
  }
  if (!a.stats.empty()) {
    Str j;
    if (auto s = obddres_run_stats_json(run.p, &j.p)) return report(s);
    if (!write_file(a.stats, j.str())) return kUsage;
  }
  if (!a.dot_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.dot_dir, ec);
    for (size_t i = 1; i <= sum.obdds; ++i) {
      for (int reduced : {0, 1}) {
        Str d;
        if (auto s = obddres_run_dot(run.p, i, reduced, &d.p)) return report(s);
        const std::string name = "B" + std::to_string(i) + (reduced ? "_reduced" : "") + ".dot";
        if (!write_file((std::filesystem::path(a.dot_dir) / name).string(), d.str())) return kUsage;
      }
    }
  }
  if (a.check) {
    if (!sum.refuted) {
      std::cout << "check skipped (satisfiable)\n";
    } else {
      int ok = 0;
      Str v;
      if (auto s = obddres_run_check(run.p, &ok, &v.p)) return report(s);
      std::cout << "check " << v.str() << "\n";
      if (!ok) code = kFail;
    }
  }
  if (a.oracle_verify) {
    Str v;
    obddres_run_violations(run.p, &v.p);
    std::cout << "invariant violations " << sum.violations << "\n" << v.str();
    if (sum.violations) code = kFail;
  }
  return code;
}

int cmd_check(const std::string &cnf_path, const std::string &trace_path) {
  Cnf cnf;
  if (auto s = obddres_cnf_read_file(cnf_path.c_str(), &cnf.p)) return report(s);
  auto trace = read_file(trace_path);
  if (!trace) {
    std::cerr << "error: cannot open " << trace_path << "\n";
    return kUsage;
  }
  int ok = 0;
  Str v;
  if (auto s = obddres_check_trace(cnf.p, trace->data(), trace->size(), &ok, &v.p))
    return report(s);
  std::cout << v.str() << "\n";
  return ok ? kOk : kFail;
}

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::string out;
};

bool gen_usage_ok(const std::string &family, std::size_t nparams) {
  if (family == "php" || family == "php-doubled" || family == "fixture") return nparams == 1;
  if (family == "random-unsat") return nparams == 3;
  return false;
}

obddres_status make_instance(const std::string &family, const std::vector<unsigned long long> &p,
                             const std::string &name, obddres_cnf **out) {
  if (family == "php") return obddres_cnf_php(static_cast<unsigned>(p[0]), out);
  if (family == "php-doubled") return obddres_cnf_php_doubled(static_cast<unsigned>(p[0]), out);
  if (family == "random-unsat")
    return obddres_cnf_random_unsat(static_cast<unsigned>(p[0]), p[1], p[2], out);
  return obddres_cnf_fixture(name.c_str(), out);
}

int cmd_gen(const GenArgs &a) {
  if (!gen_usage_ok(a.family, a.params.size())) {
    std::cerr << "error: usage: gen php N | php-doubled N | random-unsat VARS CLAUSES SEED | "
                 "fixture NAME\n";
    return kUsage;
  }
  std::vector<unsigned long long> nums;
  if (a.family != "fixture") {
    try {
      for (const auto &s : a.params) nums.push_back(std::stoull(s));
    } catch (const std::exception &) {
      std::cerr << "error: numeric parameters expected\n";
      return kUsage;
    }
  }
  Cnf cnf;
  if (auto s = make_instance(a.family, nums, a.params.front(), &cnf.p)) return report(s);
  Str d;
  if (auto e = obddres_cnf_to_dimacs(cnf.p, &d.p)) return report(e);
  if (a.out.empty()) {
    std::cout << d.str();
    return kOk;
  }
  return write_file(a.out, d.str()) ? kOk : kUsage;
}

struct BenchArgs {
  std::string family;
  std::string range;
  unsigned vars = 6;
  size_t clauses = 20;
  unsigned jobs = 1;
  std::string out;
};

struct BenchResult {
  std::string row;
  int code = kOk;
  std::string error;
};

BenchResult bench_one(const BenchArgs &a, unsigned long long k) {
  BenchResult r;
  Cnf cnf;
  obddres_status s;
  std::string label;
  if (a.family == "random-unsat") {
    s = obddres_cnf_random_unsat(a.vars, a.clauses, k, &cnf.p);
    label = "random-unsat-v" + std::to_string(a.vars) + "-c" + std::to_string(a.clauses) + "-s" +
            std::to_string(k);
  } else if (a.family == "php") {
    s = obddres_cnf_php(static_cast<unsigned>(k), &cnf.p);
    label = "php-" + std::to_string(k);
  } else {
    s = obddres_cnf_php_doubled(static_cast<unsigned>(k), &cnf.p);
    label = "php-doubled-" + std::to_string(k);
  }
  Run run;
  if (!s) s = obddres_refute(cnf.p, nullptr, &run.p);
  if (s) {
    r.code = exit_for(s);
    r.error = label + ": " + obddres_status_name(s) + ": " + obddres_last_error();
    return r;
  }
  obddres_summary sum;
  obddres_run_summary(run.p, &sum);
  if (!sum.refuted) {
    r.code = kFail;
    r.error = label + ": not refuted";
    return r;
  }
  const size_t mn = sum.m * sum.n, n2 = sum.n * sum.n;
  r.row = label + "," + std::to_string(sum.m) + "," + std::to_string(sum.n) + "," +
          std::to_string(sum.derived) + "," + std::to_string(mn) + "," + std::to_string(n2);
  if (sum.derived > mn || (sum.m <= sum.n && sum.derived > n2) || !sum.bounds_ok) {
    r.code = kFail;
    r.error = label + ": bound violated";
  }
  return r;
}

int cmd_bench(const BenchArgs &a) {
  if (a.family != "php" && a.family != "php-doubled" && a.family != "random-unsat") {
    std::cerr << "error: bench family must be php, php-doubled or random-unsat\n";
    return kUsage;
  }
  unsigned long long lo = 0, hi = 0;
  if (!parse_range(a.range, lo, hi)) {
    std::cerr << "error: range must be N or A..B with A <= B\n";
    return kUsage;
  }
  const size_t count = static_cast<size_t>(hi - lo + 1);
  std::vector<BenchResult> results(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < count;) results[i] = bench_one(a, lo + i);
  };
  std::vector<std::thread> pool;
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(count)));
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto &t : pool) t.join();

  std::string csv = "instance,m,n,derived,m_times_n,n_squared\n";
  int code = kOk;
  for (const auto &r : results) {
    if (!r.row.empty()) csv += r.row + "\n";
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    code = std::max(code, r.code);
  }
  if (a.out.empty())
    std::cout << csv;
  else if (!write_file(a.out, csv))
    return kUsage;
  return code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"OBDD refutations translated into checked resolution proofs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", obddres_version());

  RefuteArgs ra;
  auto *refute = app.add_subcommand("refute", "refute a DIMACS CNF");
  refute->add_option("cnf", ra.cnf, "input DIMACS file")->required();
  refute->add_option("--order", ra.order, "'asc' or a comma-separated variable permutation");
  refute->add_option("--schedule", ra.schedule,
                     "'linear', 'balanced', an s-expression or a file holding one");
  refute->add_option("--emit-proof", ra.proof, "write the resolution trace");
  refute->add_option("--emit-script", ra.script, "write the refutation script as JSON");
  refute->add_option("--dot", ra.dot_dir, "write B<i>.dot and B<i>_reduced.dot into this directory");
  refute->add_flag("--check", ra.check, "verify the proof with the independent checker");
  refute->add_option("--stats", ra.stats, "write size and bound statistics as JSON");
  refute->add_flag("--oracle-verify", ra.oracle_verify, "check every invariant exhaustively");
  refute->add_option("--oracle-limit", ra.oracle_limit, "largest universe for exhaustive checks");
  refute->add_option("--path-budget", ra.path_budget, "false-path enumeration budget");

  std::string check_cnf, check_trace;
  auto *check = app.add_subcommand("check", "check a resolution trace against a CNF");
  check->add_option("cnf", check_cnf)->required();
  check->add_option("trace", check_trace)->required();

  GenArgs ga;
  auto *gen = app.add_subcommand("gen", "generate an instance as DIMACS");
  gen->add_option("family", ga.family, "php, php-doubled, random-unsat or fixture")->required();
  gen->add_option("params", ga.params, "N | VARS CLAUSES SEED | fixture name")->required();
  gen->add_option("-o,--output", ga.out, "output file instead of stdout");

  BenchArgs ba;
  auto *bench = app.add_subcommand("bench", "refute a range of instances and emit CSV");
  bench->add_option("family", ba.family, "php, php-doubled or random-unsat")->required();
  bench->add_option("range", ba.range, "N or A..B (sizes, or seeds for random-unsat)")->required();
  bench->add_option("--vars", ba.vars, "random-unsat variables");
  bench->add_option("--clauses", ba.clauses, "random-unsat clauses");
  bench->add_option("-j,--jobs", ba.jobs, "parallel workers");
  bench->add_option("-o,--output", ba.out, "output file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  if (*refute) return cmd_refute(ra);
  if (*check) return cmd_check(check_cnf, check_trace);
  if (*gen) return cmd_gen(ga);
  return cmd_bench(ba);
}
