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

#ifndef REDUCTO_SRC_COMPILER_H_
#define REDUCTO_SRC_COMPILER_H_

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "reducto/ast.h"

namespace reducto {

enum class Op : uint8_t {
  kStmt,         // a = line: step, coverage, watch
  kConst,        // a = constant index
  kLoad,         // a = slot
  kDeclare,      // a = slot (let)
  kStore,        // a = slot (plain assignment)
  kIndexStore,   // a = slot; pops value then index
  kIndex,        // pops index then base
  kMakeArray,    // a = element count
  kLen,          // b = argument count
  kNeg,
  kNot,
  kBinary,       // a = BinaryOp
  kAndJump,      // a = target; short-circuits on false
  kOrJump,       // a = target; short-circuits on true
  kCheckBool,
  kJumpIfFalse,  // a = target
  kJump,         // a = target
  kCall,         // a = function index, or -1 - name index when unresolved;
                 // b = argument count
  kReturn,
  kReturnDefault,
  kPrint,
};

struct Instr {
  Op op;
  int32_t a = 0;
  int32_t b = 0;
  int32_t line = 0;
};

struct CompiledFunction {
  std::string name;
  int arity = 0;
  int line = 0;
  int end_line = 0;
  std::vector<std::string> slot_names;  // parameters first
  std::vector<Instr> code;

  int SlotOf(const std::string& name) const;
};

struct Module {
  std::vector<CompiledFunction> functions;
  std::unordered_map<std::string, int> function_index;
  std::vector<Value> constants;
  std::vector<std::string> unresolved_names;
  // Index of the function containing each line, -1 outside functions.
  std::vector<int> line_function;
};

std::shared_ptr<const Module> Compile(const Ast& ast);

}  // namespace reducto

#endif  // REDUCTO_SRC_COMPILER_H_
