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

#ifndef REDUCTO_AST_H_
#define REDUCTO_AST_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/source.h"
#include "reducto/value.h"

namespace reducto {

enum class UnaryOp { kNeg, kNot };

enum class BinaryOp {
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kAnd,
  kOr,
};

std::string_view BinaryOpSpelling(BinaryOp op);
bool IsRelational(BinaryOp op);
bool IsArithmetic(BinaryOp op);
bool IsBoolean(BinaryOp op);

struct Expr {
  enum class Kind { kLiteral, kArray, kVar, kIndex, kCall, kUnary, kBinary };

  Kind kind = Kind::kLiteral;
  Value literal;
  // Variable name, or callee name for kCall (`len` is the only builtin).
  std::string name;
  UnaryOp unary_op = UnaryOp::kNeg;
  BinaryOp binary_op = BinaryOp::kAdd;
  // kArray: elements; kIndex: {base, index}; kCall: arguments;
  // kUnary: {operand}; kBinary: {lhs, rhs}.
  std::vector<Expr> children;

  static Expr Literal(Value v);
  static Expr Var(std::string name);
  static Expr Unary(UnaryOp op, Expr operand);
  static Expr Binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr Index(Expr base, Expr index);
};

enum class LineKind {
  kFn,
  kLet,
  kAssign,
  kIndexAssign,
  kIf,
  kElse,
  kWhile,
  kReturn,
  kPrint,
  kEnd,
};

// Block markers carry no behavior of their own and are never covered.
bool IsStructural(LineKind kind);

// The parsed form of one source line.
struct LineSyntax {
  LineKind kind = LineKind::kEnd;
  std::string name;                 // fn name or assignment target
  std::vector<std::string> params;  // fn only
  Expr index;                       // kIndexAssign only
  Expr expr;  // value, condition, or returned/printed expression
};

struct Stmt {
  int line = 0;
  LineSyntax syntax;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  int else_line = 0;  // 0 when the if has no else
  int end_line = 0;   // if/while only
};

struct Function {
  std::string name;
  std::vector<std::string> params;
  int line = 0;
  int end_line = 0;
  std::vector<Stmt> body;
};

struct ParseError {
  int line = 0;
  std::string reason;
};

struct Module;  // compiled form, owned by the interpreter

// A parsed program. Immutable after parse and safe to share across threads.
struct Ast {
  std::vector<Function> functions;
  int line_count = 0;
  // Every non-blank, non-comment line, ascending.
  std::vector<int> statement_lines;
  // Statement lines that execute (everything except fn/else/end).
  std::vector<int> executable_lines;
  std::shared_ptr<const Module> module;

  const Function* FindFunction(std::string_view name) const;
  // The function whose span [line, end_line] contains the line, if any.
  const Function* FunctionAt(int line) const;
};

struct ParseResult {
  std::optional<Ast> ast;
  std::optional<ParseError> error;

  bool ok() const { return ast.has_value(); }
};

ParseResult Parse(const SourceProgram& program);

// Parses a single statement line. Returns nullopt and fills *error on
// failure; blank and comment lines are errors here.
std::optional<LineSyntax> ParseLine(std::string_view text,
                                    std::string* error = nullptr);

// Canonical spellings. Re-parsing the output yields an equal tree.
std::string PrintExpr(const Expr& expr);
std::string PrintLine(const LineSyntax& syntax);

// Leading whitespace of a line.
std::string_view Indentation(std::string_view line);

// Variables visible at a line: parameters of the enclosing function, then
// names introduced by `let` on earlier lines of that function, in order of
// first declaration.
std::vector<std::string> VariablesInScope(const Ast& ast, int line);

// Line-indexed lookup of parsed statement lines (nullptr for others).
const LineSyntax* SyntaxAt(const Ast& ast, int line);

bool operator==(const Expr& a, const Expr& b);

}  // namespace reducto

#endif  // REDUCTO_AST_H_
