// Copyright 2026 The Reducto Authors
//
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

#ifndef REDUCTO_INTERPRETER_H_
#define REDUCTO_INTERPRETER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reducto/ast.h"
#include "reducto/value.h"

namespace reducto {

inline constexpr uint64_t kDefaultStepBudget = 100000;

struct Call {
  std::string function;
  std::vector<Value> args;

  friend bool operator==(const Call&, const Call&) = default;
};

// Observe variable `variable` immediately before each execution of `line`.
struct Watch {
  std::string variable;
  int line = 0;
};

struct ExecOptions {
  uint64_t budget = kDefaultStepBudget;
  std::optional<Watch> watch;
};

struct RuntimeError {
  ErrorKind kind = ErrorKind::kTypeError;
  int line = 0;
  std::string message;

  friend bool operator==(const RuntimeError&, const RuntimeError&) = default;
};

enum class ExecStatus { kCompleted, kRuntimeError, kStepBudgetExceeded };

// Watched values in execution order; nullopt where the variable was not yet
// bound.
using ObservationTrace = std::vector<std::optional<Value>>;

struct ExecutionResult {
  ExecStatus status = ExecStatus::kCompleted;
  Value return_value;  // meaningful when Completed
  RuntimeError error;  // meaningful when RuntimeError
  std::vector<Value> output;
  std::vector<int> covered;  // ascending statement lines
  ObservationTrace trace;
  uint64_t steps = 0;

  friend bool operator==(const ExecutionResult&,
                         const ExecutionResult&) = default;
};

// Reports why `call` cannot start: UndefinedVariable when the function does
// not exist, ArityMismatch when the argument count differs. The error line is
// 0 because no statement was entered.
std::optional<RuntimeError> CheckCall(const Ast& ast, const Call& call);

// Runs `call` to completion, runtime error, or budget exhaustion. Each
// statement entry (including every evaluation of a loop header) is one step;
// building a string or array of n elements costs an extra n/64 steps.
// Throws Error(kInvalidArgument) when CheckCall fails.
ExecutionResult Execute(const Ast& ast, const Call& call,
                        const ExecOptions& options = {});

// Canonical text form; equal results serialize identically.
std::string SerializeResult(const ExecutionResult& result);

}  // namespace reducto

#endif  // REDUCTO_INTERPRETER_H_
