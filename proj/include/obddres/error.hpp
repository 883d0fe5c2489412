// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obddres {

enum class ErrorCode {
  Parse,
  NotResolvable,
  TautologicalResolvent,
  TautologicalClause,
  OracleTooLarge,
  PathBudgetExceeded,
  Precondition,
  StoreMismatch,
  Invariant,
  SamplingBudgetExhausted,
  Usage,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. Parse
/// errors additionally carry the 1-based input line.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what, std::size_t line = 0)
      : std::runtime_error(what), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

private:
  ErrorCode code_;
  std::size_t line_;
};

} // namespace obddres
