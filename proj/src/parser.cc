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

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <unordered_set>

#include "reducto/ast.h"
#include "src/compiler.h"

namespace reducto {

namespace {

enum class Tok {
  kInt,
  kFloat,
  kStr,
  kIdent,
  kKeyword,
  kPunct,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Value value;
};

const std::unordered_set<std::string_view>& Keywords() {
  static const std::unordered_set<std::string_view> kKeywords = {
      "fn",     "let",   "if",  "else", "while", "return", "print",
      "end",    "and",   "or",  "not",  "true",  "false",  "len"};
  return kKeywords;
}

struct SyntaxError {
  std::string reason;
};

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    Token tok;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      bool is_float = false;
      if (i + 1 < text.size() && text[i] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        is_float = true;
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
          is_float = true;
          i = j;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
      }
      if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        throw SyntaxError{"malformed number"};
      }
      tok.text = std::string(text.substr(start, i - start));
      if (is_float) {
        tok.kind = Tok::kFloat;
        tok.value = Value::Float(std::strtod(tok.text.c_str(), nullptr));
      } else {
        tok.kind = Tok::kInt;
        // Magnitudes up to 2^63 are accepted so that the most negative
        // integer can be written; the parser rejects 2^63 without a minus.
        errno = 0;
        unsigned long long v = std::strtoull(tok.text.c_str(), nullptr, 10);
        if (errno == ERANGE || v > (1ULL << 63)) {
          throw SyntaxError{"integer literal out of range"};
        }
        tok.value = Value::Int(static_cast<int64_t>(v));
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      tok.text = std::string(text.substr(start, i - start));
      tok.kind = Keywords().count(tok.text) ? Tok::kKeyword : Tok::kIdent;
    } else if (c == '"') {
      ++i;
      std::string s;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i++];
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i >= text.size()) break;
          char e = text[i++];
          switch (e) {
            case 'n':
              s += '\n';
              break;
            case 't':
              s += '\t';
              break;
            case '"':
            case '\\':
              s += e;
              break;
            default:
              throw SyntaxError{"unknown escape in string literal"};
          }
        } else {
          s += d;
        }
      }
      if (!closed) throw SyntaxError{"unterminated string literal"};
      tok.kind = Tok::kStr;
      tok.value = Value::Str(std::move(s));
    } else {
      static const char* kTwoChar[] = {"<=", ">=", "==", "!="};
      tok.kind = Tok::kPunct;
      for (const char* p : kTwoChar) {
        if (text.substr(i, 2) == p) tok.text = p;
      }
      if (tok.text.empty()) {
        if (std::string_view("()[],=+-*/%<>").find(c) == std::string_view::npos) {
          throw SyntaxError{std::string("unexpected character '") + c + "'"};
        }
        tok.text = std::string(1, c);
      }
      i += tok.text.size();
    }
    tokens.push_back(std::move(tok));
  }
  tokens.push_back(Token{});
  return tokens;
}

// Binding strength used by both the parser and the printer.
enum Prec {
  kPrecOr = 1,
  kPrecAnd,
  kPrecNot,
  kPrecCmp,
  kPrecAdd,
  kPrecMul,
  kPrecUnary,
  kPrecPostfix,
  kPrecAtom,
};

int BinaryPrec(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr:
      return kPrecOr;
    case BinaryOp::kAnd:
      return kPrecAnd;
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe:
    case BinaryOp::kEq:
    case BinaryOp::kNe:
      return kPrecCmp;
    case BinaryOp::kAdd:
    case BinaryOp::kSub:
      return kPrecAdd;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kMod:
      return kPrecMul;
  }
  return kPrecAtom;
}

class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& Peek() const { return toks_[pos_]; }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  Token Take() { return toks_[pos_++]; }

  bool IsPunct(std::string_view p) const {
    return Peek().kind == Tok::kPunct && Peek().text == p;
  }
  bool IsKeyword(std::string_view k) const {
    return Peek().kind == Tok::kKeyword && Peek().text == k;
  }
  void Expect(std::string_view p) {
    if (!IsPunct(p)) throw SyntaxError{"expected '" + std::string(p) + "'"};
    ++pos_;
  }
  std::string ExpectIdent() {
    if (Peek().kind != Tok::kIdent) throw SyntaxError{"expected identifier"};
    return Take().text;
  }

  Expr ParseExpr() { return ParseOr(); }

 private:
  Expr ParseOr() {
    Expr lhs = ParseAnd();
    while (IsKeyword("or")) {
      ++pos_;
      lhs = Expr::Binary(BinaryOp::kOr, std::move(lhs), ParseAnd());
    }
    return lhs;
  }

  Expr ParseAnd() {
    Expr lhs = ParseNot();
    while (IsKeyword("and")) {
      ++pos_;
      lhs = Expr::Binary(BinaryOp::kAnd, std::move(lhs), ParseNot());
    }
    return lhs;
  }

  Expr ParseNot() {
    if (IsKeyword("not")) {
      ++pos_;
      return Expr::Unary(UnaryOp::kNot, ParseNot());
    }
    return ParseCmp();
  }

  Expr ParseCmp() {
    Expr lhs = ParseAdd();
    while (Peek().kind == Tok::kPunct) {
      const std::string& t = Peek().text;
      BinaryOp op;
      if (t == "<") {
        op = BinaryOp::kLt;
      } else if (t == "<=") {
        op = BinaryOp::kLe;
      } else if (t == ">") {
        op = BinaryOp::kGt;
      } else if (t == ">=") {
        op = BinaryOp::kGe;
      } else if (t == "==") {
        op = BinaryOp::kEq;
      } else if (t == "!=") {
        op = BinaryOp::kNe;
      } else {
        break;
      }
      ++pos_;
      lhs = Expr::Binary(op, std::move(lhs), ParseAdd());
    }
    return lhs;
  }

  Expr ParseAdd() {
    Expr lhs = ParseMul();
    while (IsPunct("+") || IsPunct("-")) {
      BinaryOp op = Take().text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      lhs = Expr::Binary(op, std::move(lhs), ParseMul());
    }
    return lhs;
  }

  Expr ParseMul() {
    Expr lhs = ParseUnary();
    while (IsPunct("*") || IsPunct("/") || IsPunct("%")) {
      std::string t = Take().text;
      BinaryOp op = t == "*"   ? BinaryOp::kMul
                    : t == "/" ? BinaryOp::kDiv
                               : BinaryOp::kMod;
      lhs = Expr::Binary(op, std::move(lhs), ParseUnary());
    }
    return lhs;
  }

  Expr ParseUnary() {
    if (IsPunct("-")) {
      ++pos_;
      // A minus directly before a numeric literal folds into the literal.
      if (Peek().kind == Tok::kInt) {
        uint64_t magnitude = static_cast<uint64_t>(Take().value.as_int());
        return ParsePostfix(Expr::Literal(
            Value::Int(static_cast<int64_t>(0 - magnitude))));
      }
      if (Peek().kind == Tok::kFloat) {
        return ParsePostfix(
            Expr::Literal(Value::Float(-Take().value.as_float())));
      }
      return Expr::Unary(UnaryOp::kNeg, ParseUnary());
    }
    return ParsePostfix(ParsePrimary());
  }

  Expr ParsePostfix(Expr base) {
    while (IsPunct("[")) {
      ++pos_;
      Expr index = ParseExpr();
      Expect("]");
      base = Expr::Index(std::move(base), std::move(index));
    }
    return base;
  }

  Expr ParsePrimary() {
    const Token& tok = Peek();
    switch (tok.kind) {
      case Tok::kInt:
        if (tok.value.as_int() < 0) {
          throw SyntaxError{"integer literal out of range"};
        }
        return Expr::Literal(Take().value);
      case Tok::kFloat:
      case Tok::kStr:
        return Expr::Literal(Take().value);
      case Tok::kIdent: {
        std::string name = Take().text;
        if (IsPunct("(")) return ParseCall(std::move(name));
        return Expr::Var(std::move(name));
      }
      case Tok::kKeyword:
        if (tok.text == "true" || tok.text == "false") {
          bool v = Take().text == "true";
          return Expr::Literal(Value::Bool(v));
        }
        if (tok.text == "len") {
          ++pos_;
          if (!IsPunct("(")) throw SyntaxError{"expected '(' after len"};
          return ParseCall("len");
        }
        throw SyntaxError{"unexpected keyword '" + tok.text + "'"};
      case Tok::kPunct:
        if (tok.text == "(") {
          ++pos_;
          Expr inner = ParseExpr();
          Expect(")");
          return inner;
        }
        if (tok.text == "[") {
          ++pos_;
          Expr array;
          array.kind = Expr::Kind::kArray;
          if (!IsPunct("]")) {
            array.children.push_back(ParseExpr());
            while (IsPunct(",")) {
              ++pos_;
              array.children.push_back(ParseExpr());
            }
          }
          Expect("]");
          return array;
        }
        throw SyntaxError{"unexpected '" + tok.text + "'"};
      case Tok::kEnd:
        throw SyntaxError{"expected expression"};
    }
    throw SyntaxError{"expected expression"};
  }

  Expr ParseCall(std::string name) {
    Expect("(");
    Expr call;
    call.kind = Expr::Kind::kCall;
    call.name = std::move(name);
    if (!IsPunct(")")) {
      call.children.push_back(ParseExpr());
      while (IsPunct(",")) {
        ++pos_;
        call.children.push_back(ParseExpr());
      }
    }
    Expect(")");
    return call;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

LineSyntax ParseLineOrThrow(std::string_view text) {
  ExprParser p(Lex(text));
  LineSyntax s;
  auto finish = [&p]() {
    if (!p.AtEnd()) throw SyntaxError{"unexpected trailing '" + p.Peek().text + "'"};
  };
  const Token& first = p.Peek();
  if (first.kind == Tok::kKeyword) {
    std::string kw = p.Take().text;
    if (kw == "fn") {
      s.kind = LineKind::kFn;
      s.name = p.ExpectIdent();
      p.Expect("(");
      if (!p.IsPunct(")")) {
        s.params.push_back(p.ExpectIdent());
        while (p.IsPunct(",")) {
          p.Take();
          s.params.push_back(p.ExpectIdent());
        }
      }
      p.Expect(")");
    } else if (kw == "let") {
      s.kind = LineKind::kLet;
      s.name = p.ExpectIdent();
      p.Expect("=");
      s.expr = p.ParseExpr();
    } else if (kw == "if" || kw == "while") {
      s.kind = kw == "if" ? LineKind::kIf : LineKind::kWhile;
      s.expr = p.ParseExpr();
    } else if (kw == "return" || kw == "print") {
      s.kind = kw == "return" ? LineKind::kReturn : LineKind::kPrint;
      s.expr = p.ParseExpr();
    } else if (kw == "else") {
      s.kind = LineKind::kElse;
    } else if (kw == "end") {
      s.kind = LineKind::kEnd;
    } else {
      throw SyntaxError{"statement cannot start with '" + kw + "'"};
    }
  } else if (first.kind == Tok::kIdent) {
    s.name = p.Take().text;
    if (p.IsPunct("[")) {
      p.Take();
      s.kind = LineKind::kIndexAssign;
      s.index = p.ParseExpr();
      p.Expect("]");
    } else {
      s.kind = LineKind::kAssign;
    }
    p.Expect("=");
    s.expr = p.ParseExpr();
  } else {
    throw SyntaxError{"expected a statement"};
  }
  finish();
  return s;
}

std::string FormatFloat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string QuoteString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

int ExprPrec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kLiteral:
      if ((e.literal.is_int() && e.literal.as_int() < 0) ||
          (e.literal.is_float() && std::signbit(e.literal.as_float()))) {
        return kPrecUnary;
      }
      return kPrecAtom;
    case Expr::Kind::kArray:
    case Expr::Kind::kVar:
    case Expr::Kind::kCall:
      return kPrecAtom;
    case Expr::Kind::kIndex:
      return kPrecPostfix;
    case Expr::Kind::kUnary:
      return e.unary_op == UnaryOp::kNot ? kPrecNot : kPrecUnary;
    case Expr::Kind::kBinary:
      return BinaryPrec(e.binary_op);
  }
  return kPrecAtom;
}

std::string Wrap(const Expr& e, bool parens) {
  std::string s = PrintExpr(e);
  return parens ? "(" + s + ")" : s;
}

void CollectLets(const std::vector<Stmt>& block, int before_line,
                 std::vector<std::string>* names) {
  for (const auto& stmt : block) {
    if (stmt.line >= before_line) return;
    if (stmt.syntax.kind == LineKind::kLet) {
      bool seen = false;
      for (const auto& n : *names) seen = seen || n == stmt.syntax.name;
      if (!seen) names->push_back(stmt.syntax.name);
    }
    CollectLets(stmt.body, before_line, names);
    CollectLets(stmt.else_body, before_line, names);
  }
}

const LineSyntax* FindSyntax(const std::vector<Stmt>& block, int line) {
  for (const auto& stmt : block) {
    if (stmt.line == line) return &stmt.syntax;
    if (stmt.line > line) return nullptr;
    if (const LineSyntax* s = FindSyntax(stmt.body, line)) return s;
    if (const LineSyntax* s = FindSyntax(stmt.else_body, line)) return s;
  }
  return nullptr;
}

// Block-structure parser over the classified lines of a program.
class ProgramParser {
 public:
  explicit ProgramParser(const SourceProgram& program) : program_(program) {}

  Ast Run() {
    Ast ast;
    ast.line_count = program_.size();
    std::set<std::string> names;
    while (true) {
      auto next = NextLine();
      if (!next) break;
      auto& [line, syntax] = *next;
      if (syntax.kind != LineKind::kFn) {
        throw Failure(line, "statement outside of a function");
      }
      Function fn;
      fn.name = syntax.name;
      fn.params = syntax.params;
      fn.line = line;
      if (!names.insert(fn.name).second) {
        throw Failure(line, "duplicate function '" + fn.name + "'");
      }
      std::set<std::string> params(fn.params.begin(), fn.params.end());
      if (params.size() != fn.params.size()) {
        throw Failure(line, "duplicate parameter name");
      }
      LineKind term = ParseBlock(&fn.body, false, line, "fn", &fn.end_line);
      (void)term;
      ast.functions.push_back(std::move(fn));
    }
    for (int i = 1; i <= program_.size(); ++i) {
      if (ClassifyLine(program_.line(i)) == LineClass::kStatement) {
        ast.statement_lines.push_back(i);
      }
    }
    for (int line : ast.statement_lines) {
      if (!IsStructural(kinds_[line])) ast.executable_lines.push_back(line);
    }
    return ast;
  }

  struct Failed {
    ParseError error;
  };

 private:
  static Failed Failure(int line, std::string reason) {
    return Failed{ParseError{line, std::move(reason)}};
  }

  std::optional<std::pair<int, LineSyntax>> NextLine() {
    while (cursor_ < program_.size()) {
      int line = ++cursor_;
      const std::string& text = program_.line(line);
      if (ClassifyLine(text) != LineClass::kStatement) continue;
      try {
        LineSyntax s = ParseLineOrThrow(text);
        kinds_[line] = s.kind;
        return std::make_pair(line, std::move(s));
      } catch (const SyntaxError& e) {
        throw Failure(line, e.reason);
      }
    }
    return std::nullopt;
  }

  // Parses statements until the closing `end` (or `else` when allowed).
  LineKind ParseBlock(std::vector<Stmt>* out, bool allow_else, int open_line,
                      const char* opener, int* terminator_line) {
    while (true) {
      auto next = NextLine();
      if (!next) {
        throw Failure(program_.size(),
                      std::string("unclosed '") + opener +
                          "' block opened at line " + std::to_string(open_line));
      }
      auto& [line, syntax] = *next;
      switch (syntax.kind) {
        case LineKind::kEnd:
          *terminator_line = line;
          return LineKind::kEnd;
        case LineKind::kElse:
          if (!allow_else) throw Failure(line, "'else' without matching 'if'");
          *terminator_line = line;
          return LineKind::kElse;
        case LineKind::kFn:
          throw Failure(line, "nested function definition");
        case LineKind::kIf: {
          Stmt stmt;
          stmt.line = line;
          stmt.syntax = std::move(syntax);
          int term_line = 0;
          LineKind term = ParseBlock(&stmt.body, true, line, "if", &term_line);
          if (term == LineKind::kElse) {
            stmt.else_line = term_line;
            ParseBlock(&stmt.else_body, false, line, "if", &stmt.end_line);
          } else {
            stmt.end_line = term_line;
          }
          out->push_back(std::move(stmt));
          break;
        }
        case LineKind::kWhile: {
          Stmt stmt;
          stmt.line = line;
          stmt.syntax = std::move(syntax);
          ParseBlock(&stmt.body, false, line, "while", &stmt.end_line);
          out->push_back(std::move(stmt));
          break;
        }
        default: {
          Stmt stmt;
          stmt.line = line;
          stmt.syntax = std::move(syntax);
          out->push_back(std::move(stmt));
        }
      }
    }
  }

  const SourceProgram& program_;
  int cursor_ = 0;
  std::vector<LineKind> kinds_ =
      std::vector<LineKind>(program_.size() + 1, LineKind::kEnd);
};

}  // namespace

std::string_view BinaryOpSpelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return "+";
    case BinaryOp::kSub:
      return "-";
    case BinaryOp::kMul:
      return "*";
    case BinaryOp::kDiv:
      return "/";
    case BinaryOp::kMod:
      return "%";
    case BinaryOp::kLt:
      return "<";
    case BinaryOp::kLe:
      return "<=";
    case BinaryOp::kGt:
      return ">";
    case BinaryOp::kGe:
      return ">=";
    case BinaryOp::kEq:
      return "==";
    case BinaryOp::kNe:
      return "!=";
    case BinaryOp::kAnd:
      return "and";
    case BinaryOp::kOr:
      return "or";
  }
  return "?";
}

bool IsRelational(BinaryOp op) { return BinaryPrec(op) == kPrecCmp; }

bool IsArithmetic(BinaryOp op) {
  int p = BinaryPrec(op);
  return p == kPrecAdd || p == kPrecMul;
}

bool IsBoolean(BinaryOp op) {
  return op == BinaryOp::kAnd || op == BinaryOp::kOr;
}

bool IsStructural(LineKind kind) {
  return kind == LineKind::kFn || kind == LineKind::kElse ||
         kind == LineKind::kEnd;
}

Expr Expr::Literal(Value v) {
  Expr e;
  e.kind = Kind::kLiteral;
  e.literal = std::move(v);
  return e;
}

Expr Expr::Var(std::string name) {
  Expr e;
  e.kind = Kind::kVar;
  e.name = std::move(name);
  return e;
}

Expr Expr::Unary(UnaryOp op, Expr operand) {
  Expr e;
  e.kind = Kind::kUnary;
  e.unary_op = op;
  e.children.push_back(std::move(operand));
  return e;
}

Expr Expr::Binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::kBinary;
  e.binary_op = op;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

Expr Expr::Index(Expr base, Expr index) {
  Expr e;
  e.kind = Kind::kIndex;
  e.children.push_back(std::move(base));
  e.children.push_back(std::move(index));
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kLiteral:
      return a.literal == b.literal;
    case Expr::Kind::kVar:
      return a.name == b.name;
    case Expr::Kind::kCall:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::kUnary:
      if (a.unary_op != b.unary_op) return false;
      break;
    case Expr::Kind::kBinary:
      if (a.binary_op != b.binary_op) return false;
      break;
    default:
      break;
  }
  return a.children == b.children;
}

const Function* Ast::FindFunction(std::string_view name) const {
  for (const auto& fn : functions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

const Function* Ast::FunctionAt(int line) const {
  for (const auto& fn : functions) {
    if (fn.line <= line && line <= fn.end_line) return &fn;
  }
  return nullptr;
}

ParseResult Parse(const SourceProgram& program) {
  ParseResult result;
  try {
    Ast ast = ProgramParser(program).Run();
    ast.module = Compile(ast);
    result.ast = std::move(ast);
  } catch (const ProgramParser::Failed& f) {
    result.error = f.error;
  }
  return result;
}

std::optional<LineSyntax> ParseLine(std::string_view text, std::string* error) {
  try {
    if (ClassifyLine(text) != LineClass::kStatement) {
      throw SyntaxError{"not a statement line"};
    }
    return ParseLineOrThrow(text);
  } catch (const SyntaxError& e) {
    if (error) *error = e.reason;
    return std::nullopt;
  }
}

std::string PrintExpr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kLiteral:
      switch (e.literal.type()) {
        case Value::Type::kInt:
          return std::to_string(e.literal.as_int());
        case Value::Type::kFloat:
          return FormatFloat(e.literal.as_float());
        case Value::Type::kBool:
          return e.literal.as_bool() ? "true" : "false";
        case Value::Type::kStr:
          return QuoteString(e.literal.as_str());
        case Value::Type::kArray:
          break;
      }
      return e.literal.ToString();
    case Expr::Kind::kArray:
    case Expr::Kind::kCall: {
      std::string s = e.kind == Expr::Kind::kArray ? "[" : e.name + "(";
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += ", ";
        s += PrintExpr(e.children[i]);
      }
      s += e.kind == Expr::Kind::kArray ? "]" : ")";
      return s;
    }
    case Expr::Kind::kVar:
      return e.name;
    case Expr::Kind::kIndex:
      return Wrap(e.children[0], ExprPrec(e.children[0]) < kPrecPostfix) + "[" +
             PrintExpr(e.children[1]) + "]";
    case Expr::Kind::kUnary:
      if (e.unary_op == UnaryOp::kNot) {
        return "not " + Wrap(e.children[0], ExprPrec(e.children[0]) < kPrecNot);
      }
      return "-" + Wrap(e.children[0], ExprPrec(e.children[0]) <= kPrecUnary);
    case Expr::Kind::kBinary: {
      int prec = BinaryPrec(e.binary_op);
      return Wrap(e.children[0], ExprPrec(e.children[0]) < prec) + " " +
             std::string(BinaryOpSpelling(e.binary_op)) + " " +
             Wrap(e.children[1], ExprPrec(e.children[1]) <= prec);
    }
  }
  return "";
}

std::string PrintLine(const LineSyntax& s) {
  switch (s.kind) {
    case LineKind::kFn: {
      std::string out = "fn " + s.name + "(";
      for (size_t i = 0; i < s.params.size(); ++i) {
        if (i) out += ", ";
        out += s.params[i];
      }
      return out + ")";
    }
    case LineKind::kLet:
      return "let " + s.name + " = " + PrintExpr(s.expr);
    case LineKind::kAssign:
      return s.name + " = " + PrintExpr(s.expr);
    case LineKind::kIndexAssign:
      return s.name + "[" + PrintExpr(s.index) + "] = " + PrintExpr(s.expr);
    case LineKind::kIf:
      return "if " + PrintExpr(s.expr);
    case LineKind::kElse:
      return "else";
    case LineKind::kWhile:
      return "while " + PrintExpr(s.expr);
    case LineKind::kReturn:
      return "return " + PrintExpr(s.expr);
    case LineKind::kPrint:
      return "print " + PrintExpr(s.expr);
    case LineKind::kEnd:
      return "end";
  }
  return "";
}

std::string_view Indentation(std::string_view line) {
  size_t i = line.find_first_not_of(" \t");
  return line.substr(0, i == std::string_view::npos ? line.size() : i);
}

std::vector<std::string> VariablesInScope(const Ast& ast, int line) {
  std::vector<std::string> names;
  const Function* fn = ast.FunctionAt(line);
  if (!fn) return names;
  names = fn->params;
  CollectLets(fn->body, line, &names);
  return names;
}

const LineSyntax* SyntaxAt(const Ast& ast, int line) {
  const Function* fn = ast.FunctionAt(line);
  if (!fn) return nullptr;
  return FindSyntax(fn->body, line);
}

}  // namespace reducto
