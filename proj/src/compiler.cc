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

#include "src/compiler.h"

namespace reducto {

int CompiledFunction::SlotOf(const std::string& name) const {
  for (size_t i = 0; i < slot_names.size(); ++i) {
    if (slot_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

class FunctionCompiler {
 public:
  FunctionCompiler(Module* module, CompiledFunction* out)
      : module_(module), out_(out) {}

  void CompileBody(const Function& fn) {
    for (const auto& p : fn.params) Slot(p);
    line_ = fn.line;
    CompileBlock(fn.body);
    line_ = fn.end_line;
    Emit(Op::kReturnDefault);
  }

 private:
  int Slot(const std::string& name) {
    int slot = out_->SlotOf(name);
    if (slot >= 0) return slot;
    out_->slot_names.push_back(name);
    return static_cast<int>(out_->slot_names.size()) - 1;
  }

  size_t Emit(Op op, int32_t a = 0, int32_t b = 0) {
    out_->code.push_back(Instr{op, a, b, line_});
    return out_->code.size() - 1;
  }

  int32_t Here() const { return static_cast<int32_t>(out_->code.size()); }

  void Patch(size_t at) { out_->code[at].a = Here(); }

  void CompileBlock(const std::vector<Stmt>& block) {
    for (const auto& stmt : block) CompileStmt(stmt);
  }

  void CompileStmt(const Stmt& stmt) {
    line_ = stmt.line;
    const LineSyntax& s = stmt.syntax;
    switch (s.kind) {
      case LineKind::kLet:
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.expr);
        Emit(Op::kDeclare, Slot(s.name));
        break;
      case LineKind::kAssign:
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.expr);
        Emit(Op::kStore, Slot(s.name));
        break;
      case LineKind::kIndexAssign:
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.index);
        CompileExpr(s.expr);
        Emit(Op::kIndexStore, Slot(s.name));
        break;
      case LineKind::kIf: {
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.expr);
        size_t to_else = Emit(Op::kJumpIfFalse);
        CompileBlock(stmt.body);
        if (stmt.else_line) {
          line_ = stmt.else_line;
          size_t to_end = Emit(Op::kJump);
          Patch(to_else);
          CompileBlock(stmt.else_body);
          Patch(to_end);
        } else {
          Patch(to_else);
        }
        break;
      }
      case LineKind::kWhile: {
        int32_t top = Here();
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.expr);
        size_t exit = Emit(Op::kJumpIfFalse);
        CompileBlock(stmt.body);
        line_ = stmt.end_line;
        Emit(Op::kJump, top);
        Patch(exit);
        break;
      }
      case LineKind::kReturn:
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.expr);
        Emit(Op::kReturn);
        break;
      case LineKind::kPrint:
        Emit(Op::kStmt, stmt.line);
        CompileExpr(s.expr);
        Emit(Op::kPrint);
        break;
      default:
        break;
    }
  }

  void CompileExpr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::kLiteral:
        module_->constants.push_back(e.literal);
        Emit(Op::kConst, static_cast<int32_t>(module_->constants.size() - 1));
        break;
      case Expr::Kind::kArray:
        for (const auto& c : e.children) CompileExpr(c);
        Emit(Op::kMakeArray, static_cast<int32_t>(e.children.size()));
        break;
      case Expr::Kind::kVar:
        Emit(Op::kLoad, Slot(e.name));
        break;
      case Expr::Kind::kIndex:
        CompileExpr(e.children[0]);
        CompileExpr(e.children[1]);
        Emit(Op::kIndex);
        break;
      case Expr::Kind::kCall: {
        for (const auto& c : e.children) CompileExpr(c);
        auto argc = static_cast<int32_t>(e.children.size());
        if (e.name == "len") {
          Emit(Op::kLen, 0, argc);
          break;
        }
        auto it = module_->function_index.find(e.name);
        int32_t target;
        if (it != module_->function_index.end()) {
          target = it->second;
        } else {
          module_->unresolved_names.push_back(e.name);
          target = -static_cast<int32_t>(module_->unresolved_names.size());
        }
        Emit(Op::kCall, target, argc);
        break;
      }
      case Expr::Kind::kUnary:
        CompileExpr(e.children[0]);
        Emit(e.unary_op == UnaryOp::kNeg ? Op::kNeg : Op::kNot);
        break;
      case Expr::Kind::kBinary:
        CompileExpr(e.children[0]);
        if (IsBoolean(e.binary_op)) {
          size_t jump = Emit(e.binary_op == BinaryOp::kAnd ? Op::kAndJump
                                                           : Op::kOrJump);
          CompileExpr(e.children[1]);
          Emit(Op::kCheckBool);
          Patch(jump);
        } else {
          CompileExpr(e.children[1]);
          Emit(Op::kBinary, static_cast<int32_t>(e.binary_op));
        }
        break;
    }
  }

  Module* module_;
  CompiledFunction* out_;
  int32_t line_ = 0;
};

}  // namespace

std::shared_ptr<const Module> Compile(const Ast& ast) {
  auto module = std::make_shared<Module>();
  module->line_function.assign(ast.line_count + 1, -1);
  for (size_t i = 0; i < ast.functions.size(); ++i) {
    const Function& fn = ast.functions[i];
    module->function_index[fn.name] = static_cast<int>(i);
    for (int line = fn.line; line <= fn.end_line; ++line) {
      module->line_function[line] = static_cast<int>(i);
    }
  }
  module->functions.resize(ast.functions.size());
  for (size_t i = 0; i < ast.functions.size(); ++i) {
    const Function& fn = ast.functions[i];
    CompiledFunction& out = module->functions[i];
    out.name = fn.name;
    out.arity = static_cast<int>(fn.params.size());
    out.line = fn.line;
    out.end_line = fn.end_line;
    FunctionCompiler(module.get(), &out).CompileBody(fn);
  }
  return module;
}

}  // namespace reducto
