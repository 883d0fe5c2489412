// SPDX-License-Identifier: Apache-2.0
#pragma once

// Machine-readable views of a run: script JSON, stats JSON, annotation JSON
// and bench CSV rows. All JSON is emitted with two-space indentation.

#include "obddres/annotation.hpp"
#include "obddres/refutation.hpp"

#include <optional>
#include <string>

namespace obddres {

std::string script_to_json(const RefutationScript &script);

/// n, m, derived steps, bound checks, per-event slack and the largest
/// |Pf(p)| - tau(p) over eliminated nodes. `translation` is absent for
/// satisfiable runs; the proof section is then omitted.
std::string stats_to_json(const RefutationScript &script,
                          const std::optional<Translation> &translation);

/// F as "path" -> clause id, plus the profile of every reachable inner node.
std::string annotation_to_json(const ObddStore &store, const ClauseDb &db, const Annotation &a);

struct BenchRow {
  std::string instance;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t derived = 0;
};

inline constexpr const char *kBenchHeader = "instance,m,n,derived,m_times_n,n_squared";

/// "instance,m,n,derived,m_times_n,n_squared" without a line break.
std::string bench_csv_row(const BenchRow &row);

} // namespace obddres
