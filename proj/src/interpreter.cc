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

#include "reducto/interpreter.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "reducto/error.h"
#include "src/compiler.h"

namespace reducto {

namespace {

struct Fault {
  ErrorKind kind;
  std::string message;
};

struct BudgetExhausted {};

Fault TypeFault(std::string message) {
  return Fault{ErrorKind::kTypeError, std::move(message)};
}

int64_t WrapAdd(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) +
                              static_cast<uint64_t>(b));
}
int64_t WrapSub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) -
                              static_cast<uint64_t>(b));
}
int64_t WrapMul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) *
                              static_cast<uint64_t>(b));
}

std::string Describe(const Value& a, std::string_view op, const Value& b) {
  return "unsupported operands for " + std::string(op) + ": " +
         std::string(TypeName(a.type())) + " and " +
         std::string(TypeName(b.type()));
}

bool Compare(BinaryOp op, const Value& a, const Value& b) {
  auto apply = [op](const auto& x, const auto& y) {
    switch (op) {
      case BinaryOp::kLt:
        return x < y;
      case BinaryOp::kLe:
        return x <= y;
      case BinaryOp::kGt:
        return x > y;
      default:
        return x >= y;
    }
  };
  if (a.is_int() && b.is_int()) return apply(a.as_int(), b.as_int());
  if (a.is_float() && b.is_float()) return apply(a.as_float(), b.as_float());
  if (a.is_str() && b.is_str()) return apply(a.as_str(), b.as_str());
  throw TypeFault(Describe(a, BinaryOpSpelling(op), b));
}

class Machine {
 public:
  Machine(const Ast& ast, const ExecOptions& options)
      : module_(*ast.module), options_(options) {
    covered_.assign(ast.line_count + 1, 0);
    if (options.watch && options.watch->line > 0 &&
        options.watch->line <= ast.line_count) {
      watch_line_ = options.watch->line;
      int fn = module_.line_function[watch_line_];
      if (fn >= 0) {
        watch_function_ = fn;
        watch_slot_ = module_.functions[fn].SlotOf(options.watch->variable);
      }
    }
  }

  ExecutionResult Run(int function, std::vector<Value> args) {
    ExecutionResult result;
    int line = 0;
    try {
      PushFrame(function, std::move(args));
      result.return_value = Loop(&line);
      result.status = ExecStatus::kCompleted;
    } catch (const Fault& f) {
      result.status = ExecStatus::kRuntimeError;
      result.error = RuntimeError{f.kind, line, f.message};
    } catch (const BudgetExhausted&) {
      result.status = ExecStatus::kStepBudgetExceeded;
    }
    result.output = std::move(output_);
    result.trace = std::move(trace_);
    result.steps = steps_;
    for (size_t i = 1; i < covered_.size(); ++i) {
      if (covered_[i]) result.covered.push_back(static_cast<int>(i));
    }
    return result;
  }

 private:
  struct Frame {
    int function;
    size_t pc = 0;
    size_t stack_base = 0;
    std::vector<Value> slots;
    std::vector<char> bound;
  };

  void PushFrame(int function, std::vector<Value> args) {
    const CompiledFunction& fn = module_.functions[function];
    Frame frame;
    frame.function = function;
    frame.stack_base = stack_.size();
    frame.slots.resize(fn.slot_names.size());
    frame.bound.assign(fn.slot_names.size(), 0);
    for (size_t i = 0; i < args.size(); ++i) {
      frame.slots[i] = std::move(args[i]);
      frame.bound[i] = 1;
    }
    frames_.push_back(std::move(frame));
  }

  void Charge(uint64_t steps) {
    if (steps_ + steps > options_.budget) {
      steps_ = options_.budget;
      throw BudgetExhausted{};
    }
    steps_ += steps;
  }

  Value Pop() {
    Value v = std::move(stack_.back());
    stack_.pop_back();
    return v;
  }

  static void RequireBool(const Value& v, const char* what) {
    if (!v.is_bool()) {
      throw TypeFault(std::string(what) + " must be bool, got " +
                      std::string(TypeName(v.type())));
    }
  }

  static int64_t CheckedIndex(const Value& index, size_t size) {
    if (!index.is_int()) {
      throw TypeFault("index must be int, got " +
                      std::string(TypeName(index.type())));
    }
    int64_t i = index.as_int();
    if (i < 0 || static_cast<uint64_t>(i) >= size) {
      throw Fault{ErrorKind::kIndexOutOfBounds,
                  "index " + std::to_string(i) + " out of bounds for length " +
                      std::to_string(size)};
    }
    return i;
  }

  Value Arith(BinaryOp op, const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) {
      int64_t x = a.as_int(), y = b.as_int();
      switch (op) {
        case BinaryOp::kAdd:
          return Value::Int(WrapAdd(x, y));
        case BinaryOp::kSub:
          return Value::Int(WrapSub(x, y));
        case BinaryOp::kMul:
          return Value::Int(WrapMul(x, y));
        case BinaryOp::kDiv:
          if (y == 0) throw Fault{ErrorKind::kDivByZero, "division by zero"};
          if (y == -1) return Value::Int(WrapSub(0, x));
          return Value::Int(x / y);
        case BinaryOp::kMod:
          if (y == 0) throw Fault{ErrorKind::kDivByZero, "modulo by zero"};
          if (y == -1) return Value::Int(0);
          return Value::Int(x % y);
        default:
          break;
      }
    }
    if (a.is_float() && b.is_float()) {
      double x = a.as_float(), y = b.as_float();
      switch (op) {
        case BinaryOp::kAdd:
          return Value::Float(x + y);
        case BinaryOp::kSub:
          return Value::Float(x - y);
        case BinaryOp::kMul:
          return Value::Float(x * y);
        case BinaryOp::kDiv:
          return Value::Float(x / y);
        case BinaryOp::kMod:
          return Value::Float(std::fmod(x, y));
        default:
          break;
      }
    }
    if (op == BinaryOp::kAdd && a.is_str() && b.is_str()) {
      Charge((a.as_str().size() + b.as_str().size()) / 64);
      return Value::Str(a.as_str() + b.as_str());
    }
    if (op == BinaryOp::kAdd && a.is_array() && b.is_array()) {
      Charge((a.as_array().size() + b.as_array().size()) / 64);
      Value::Array joined = a.as_array();
      joined.insert(joined.end(), b.as_array().begin(), b.as_array().end());
      return Value::MakeArray(std::move(joined));
    }
    throw TypeFault(Describe(a, BinaryOpSpelling(op), b));
  }

  Value Binary(BinaryOp op, const Value& a, const Value& b) {
    switch (op) {
      case BinaryOp::kEq:
        return Value::Bool(a == b);
      case BinaryOp::kNe:
        return Value::Bool(a != b);
      case BinaryOp::kLt:
      case BinaryOp::kLe:
      case BinaryOp::kGt:
      case BinaryOp::kGe:
        return Value::Bool(Compare(op, a, b));
      default:
        return Arith(op, a, b);
    }
  }

  Value Loop(int* line) {
    while (true) {
      Frame& frame = frames_.back();
      const CompiledFunction& fn = module_.functions[frame.function];
      const Instr& in = fn.code[frame.pc++];
      *line = in.line;
      switch (in.op) {
        case Op::kStmt:
          Charge(1);
          covered_[in.a] = 1;
          if (in.a == watch_line_ && frame.function == watch_function_) {
            if (watch_slot_ >= 0 && frame.bound[watch_slot_]) {
              trace_.emplace_back(frame.slots[watch_slot_]);
            } else {
              trace_.emplace_back(std::nullopt);
            }
          }
          break;
        case Op::kConst:
          stack_.push_back(module_.constants[in.a]);
          break;
        case Op::kLoad:
          if (!frame.bound[in.a]) {
            throw Fault{ErrorKind::kUndefinedVariable,
                        "undefined variable '" + fn.slot_names[in.a] + "'"};
          }
          stack_.push_back(frame.slots[in.a]);
          break;
        case Op::kDeclare:
          frame.slots[in.a] = Pop();
          frame.bound[in.a] = 1;
          break;
        case Op::kStore:
          if (!frame.bound[in.a]) {
            throw Fault{ErrorKind::kUndefinedVariable,
                        "assignment to undeclared variable '" +
                            fn.slot_names[in.a] + "'"};
          }
          frame.slots[in.a] = Pop();
          break;
        case Op::kIndexStore: {
          Value value = Pop();
          Value index = Pop();
          if (!frame.bound[in.a]) {
            throw Fault{ErrorKind::kUndefinedVariable,
                        "undefined variable '" + fn.slot_names[in.a] + "'"};
          }
          Value& target = frame.slots[in.a];
          if (!target.is_array()) {
            throw TypeFault("cannot index-assign into " +
                            std::string(TypeName(target.type())));
          }
          int64_t i = CheckedIndex(index, target.as_array().size());
          target.mutable_array()[i] = std::move(value);
          break;
        }
        case Op::kIndex: {
          Value index = Pop();
          Value base = Pop();
          if (base.is_array()) {
            int64_t i = CheckedIndex(index, base.as_array().size());
            stack_.push_back(base.as_array()[i]);
          } else if (base.is_str()) {
            int64_t i = CheckedIndex(index, base.as_str().size());
            stack_.push_back(Value::Str(std::string(1, base.as_str()[i])));
          } else {
            throw TypeFault("cannot index into " +
                            std::string(TypeName(base.type())));
          }
          break;
        }
        case Op::kMakeArray: {
          Charge(in.a / 64);
          Value::Array elements(stack_.end() - in.a, stack_.end());
          stack_.resize(stack_.size() - in.a);
          stack_.push_back(Value::MakeArray(std::move(elements)));
          break;
        }
        case Op::kLen: {
          if (in.b != 1) {
            throw Fault{ErrorKind::kArityMismatch,
                        "len expects 1 argument, got " + std::to_string(in.b)};
          }
          Value v = Pop();
          if (v.is_array()) {
            stack_.push_back(
                Value::Int(static_cast<int64_t>(v.as_array().size())));
          } else if (v.is_str()) {
            stack_.push_back(
                Value::Int(static_cast<int64_t>(v.as_str().size())));
          } else {
            throw TypeFault("len of " + std::string(TypeName(v.type())));
          }
          break;
        }
        case Op::kNeg: {
          Value v = Pop();
          if (v.is_int()) {
            stack_.push_back(Value::Int(WrapSub(0, v.as_int())));
          } else if (v.is_float()) {
            stack_.push_back(Value::Float(-v.as_float()));
          } else {
            throw TypeFault("cannot negate " + std::string(TypeName(v.type())));
          }
          break;
        }
        case Op::kNot: {
          Value v = Pop();
          RequireBool(v, "operand of not");
          stack_.push_back(Value::Bool(!v.as_bool()));
          break;
        }
        case Op::kBinary: {
          Value b = Pop();
          Value a = Pop();
          stack_.push_back(Binary(static_cast<BinaryOp>(in.a), a, b));
          break;
        }
        case Op::kAndJump:
        case Op::kOrJump: {
          const Value& top = stack_.back();
          RequireBool(top, "operand of and/or");
          bool short_circuit = (in.op == Op::kAndJump) != top.as_bool();
          if (short_circuit) {
            frame.pc = in.a;
          } else {
            stack_.pop_back();
          }
          break;
        }
        case Op::kCheckBool:
          RequireBool(stack_.back(), "operand of and/or");
          break;
        case Op::kJumpIfFalse: {
          Value cond = Pop();
          RequireBool(cond, "condition");
          if (!cond.as_bool()) frame.pc = in.a;
          break;
        }
        case Op::kJump:
          frame.pc = in.a;
          break;
        case Op::kCall: {
          if (in.a < 0) {
            throw Fault{ErrorKind::kUndefinedVariable,
                        "undefined function '" +
                            module_.unresolved_names[-in.a - 1] + "'"};
          }
          const CompiledFunction& callee = module_.functions[in.a];
          if (callee.arity != in.b) {
            throw Fault{ErrorKind::kArityMismatch,
                        callee.name + " expects " +
                            std::to_string(callee.arity) + " arguments, got " +
                            std::to_string(in.b)};
          }
          std::vector<Value> args(std::make_move_iterator(stack_.end() - in.b),
                                  std::make_move_iterator(stack_.end()));
          stack_.resize(stack_.size() - in.b);
          PushFrame(in.a, std::move(args));
          break;
        }
        case Op::kReturn:
        case Op::kReturnDefault: {
          Value v = in.op == Op::kReturn ? Pop() : Value::Int(0);
          stack_.resize(frame.stack_base);
          frames_.pop_back();
          if (frames_.empty()) return v;
          stack_.push_back(std::move(v));
          break;
        }
        case Op::kPrint:
          output_.push_back(Pop());
          break;
      }
    }
  }

  const Module& module_;
  const ExecOptions& options_;
  std::vector<Frame> frames_;
  std::vector<Value> stack_;
  std::vector<char> covered_;
  std::vector<Value> output_;
  ObservationTrace trace_;
  uint64_t steps_ = 0;
  int watch_line_ = -1;
  int watch_function_ = -1;
  int watch_slot_ = -1;
};

}  // namespace

std::optional<RuntimeError> CheckCall(const Ast& ast, const Call& call) {
  auto it = ast.module->function_index.find(call.function);
  if (it == ast.module->function_index.end()) {
    return RuntimeError{ErrorKind::kUndefinedVariable, 0,
                        "undefined function '" + call.function + "'"};
  }
  const CompiledFunction& fn = ast.module->functions[it->second];
  if (static_cast<size_t>(fn.arity) != call.args.size()) {
    return RuntimeError{ErrorKind::kArityMismatch, 0,
                        fn.name + " expects " + std::to_string(fn.arity) +
                            " arguments, got " +
                            std::to_string(call.args.size())};
  }
  return std::nullopt;
}

ExecutionResult Execute(const Ast& ast, const Call& call,
                        const ExecOptions& options) {
  if (auto bad = CheckCall(ast, call)) {
    throw Error(ErrorCode::kInvalidArgument, bad->message);
  }
  int function = ast.module->function_index.at(call.function);
  return Machine(ast, options).Run(function, call.args);
}

std::string SerializeResult(const ExecutionResult& r) {
  std::ostringstream out;
  switch (r.status) {
    case ExecStatus::kCompleted:
      out << "completed " << r.return_value.ToString();
      break;
    case ExecStatus::kRuntimeError:
      out << "error " << ErrorKindName(r.error.kind) << " line " << r.error.line
          << " " << r.error.message;
      break;
    case ExecStatus::kStepBudgetExceeded:
      out << "budget-exceeded";
      break;
  }
  out << "\nsteps " << r.steps << "\noutput";
  for (const auto& v : r.output) out << ' ' << v.ToString();
  out << "\ncovered";
  for (int line : r.covered) out << ' ' << line;
  out << "\ntrace";
  for (const auto& v : r.trace) out << ' ' << (v ? v->ToString() : "<unbound>");
  out << '\n';
  return out.str();
}

}  // namespace reducto
