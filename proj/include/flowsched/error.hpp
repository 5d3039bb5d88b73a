// Copyright 2026 The flowsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flowsched {

enum class ErrorCode {
  kInvalidInstance,
  kInvalidArgument,
  kInfeasibleDeadlines,
  kIterationLimitExceeded,
  kUncoverablePoint,
  kLimitExceeded,
  kResidualUncovered,
  kNoFeasibleSpeed,
  kCycleDetected,
  kDimensionMismatch,
  kParseError,
  kInternal,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance: return "invalid-instance";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInfeasibleDeadlines: return "infeasible-deadlines";
    case ErrorCode::kIterationLimitExceeded: return "iteration-limit-exceeded";
    case ErrorCode::kUncoverablePoint: return "uncoverable-point";
    case ErrorCode::kLimitExceeded: return "limit-exceeded";
    case ErrorCode::kResidualUncovered: return "residual-uncovered";
    case ErrorCode::kNoFeasibleSpeed: return "no-feasible-speed";
    case ErrorCode::kCycleDetected: return "cycle-detected";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status and tests can assert on the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flowsched
