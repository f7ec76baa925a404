// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace wildkz {

// Every library failure carries a stable machine-readable kind, which the CLI
// maps to an exit code.
enum class ErrorKind {
  Schema,
  CriticalLevel,
  CoincidentTimes,
  TruncationExceeded,
  CutoffTooSmall,
  NonInvariant,
  ZeroTime,
  NotFiniteType,
  CoalescencePenalty,
  StepUnderflow,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind kind);
int error_exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace wildkz
