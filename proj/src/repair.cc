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

#include "reducto/repair.h"

#include <chrono>
#include <set>

#include "json.hpp"
#include "reducto/error.h"

namespace reducto {

namespace {

constexpr BinaryOp kRelational[] = {BinaryOp::kLt, BinaryOp::kLe, BinaryOp::kGt,
                                    BinaryOp::kGe, BinaryOp::kEq, BinaryOp::kNe};
constexpr BinaryOp kArithmetic[] = {BinaryOp::kAdd, BinaryOp::kSub, BinaryOp::kMul,
                                    BinaryOp::kDiv, BinaryOp::kMod};

// Nodes of an expression in the order their tokens appear in the source.
void Visit(Expr& e, std::vector<Expr*>& out) {
  switch (e.kind) {
    case Expr::Kind::kBinary:
      Visit(e.children[0], out);
      out.push_back(&e);
      Visit(e.children[1], out);
      return;
    case Expr::Kind::kIndex:
      Visit(e.children[0], out);
      out.push_back(&e);
      Visit(e.children[1], out);
      return;
    default:
      out.push_back(&e);
      for (auto& c : e.children) Visit(c, out);
      return;
  }
}

std::vector<Expr*> Nodes(LineSyntax& s) {
  std::vector<Expr*> out;
  switch (s.kind) {
    case LineKind::kIndexAssign:
      Visit(s.index, out);
      Visit(s.expr, out);
      break;
    case LineKind::kLet:
    case LineKind::kAssign:
    case LineKind::kIf:
    case LineKind::kWhile:
    case LineKind::kReturn:
    case LineKind::kPrint:
      Visit(s.expr, out);
      break;
    default:
      break;
  }
  return out;
}

bool IsSimple(LineKind kind) {
  return kind == LineKind::kLet || kind == LineKind::kAssign ||
         kind == LineKind::kIndexAssign || kind == LineKind::kReturn ||
         kind == LineKind::kPrint;
}

int64_t Wrapping(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}

Expr IntLit(int64_t v) { return Expr::Literal(Value::Int(v)); }

// index + delta, folding a trailing integer offset.
Expr Offset(const Expr& index, int64_t delta) {
  if (index.kind == Expr::Kind::kBinary &&
      (index.binary_op == BinaryOp::kAdd || index.binary_op == BinaryOp::kSub) &&
      index.children[1].kind == Expr::Kind::kLiteral &&
      index.children[1].literal.type() == Value::Type::kInt) {
    int64_t k = index.children[1].literal.as_int();
    if (index.binary_op == BinaryOp::kSub) k = -k;
    k = Wrapping(k, delta);
    if (k == 0) return index.children[0];
    if (k > 0) return Expr::Binary(BinaryOp::kAdd, index.children[0], IntLit(k));
    return Expr::Binary(BinaryOp::kSub, index.children[0], IntLit(-k));
  }
  if (index.kind == Expr::Kind::kLiteral && index.literal.type() == Value::Type::kInt) {
    return IntLit(Wrapping(index.literal.as_int(), delta));
  }
  return Expr::Binary(delta > 0 ? BinaryOp::kAdd : BinaryOp::kSub, index,
                      IntLit(delta > 0 ? delta : -delta));
}

Expr InBounds(const Expr& base, const Expr& index) {
  Expr len;
  len.kind = Expr::Kind::kCall;
  len.name = "len";
  len.children.push_back(base);
  return Expr::Binary(BinaryOp::kAnd, Expr::Binary(BinaryOp::kGe, index, IntLit(0)),
                      Expr::Binary(BinaryOp::kLt, index, std::move(len)));
}

class Instantiator {
 public:
  Instantiator(const Ast& ast, const SourceProgram& program, int line,
               const LineSyntax& syntax)
      : ast_(ast),
        line_(line),
        original_(program.line(line)),
        indent_(Indentation(program.line(line))),
        syntax_(syntax) {}

  std::vector<TemplateInstance> Run() {
    Relational();
    Arithmetic();
    Boolean();
    Constants();
    Indexes();
    Deletion();
    Returns();
    Guards();
    Variables();
    return std::move(out_);
  }

 private:
  // Mutates the k-th node of a fresh copy of the line and records the result.
  template <typename F>
  void Mutate(const char* id, size_t k, F&& f) {
    LineSyntax copy = syntax_;
    Expr* node = Nodes(copy)[k];
    f(*node);
    Replace(id, PrintLine(copy));
  }

  void Replace(const char* id, const std::string& statement) {
    Add(id, {EditKind::kReplaceLine, std::string(indent_) + statement});
  }

  void Add(const char* id, PatchEdit edit) {
    if (edit.kind == EditKind::kReplaceLine && edit.text == original_) return;
    auto key = std::make_pair(edit.kind, edit.text);
    if (!seen_.insert(key).second) return;
    out_.push_back({id, std::move(edit)});
  }

  size_t NodeCount() {
    LineSyntax copy = syntax_;
    return Nodes(copy).size();
  }

  const Expr& NodeAt(size_t k) {
    scratch_ = syntax_;
    return *Nodes(scratch_)[k];
  }

  void Relational() {
    for (size_t k = 0; k < NodeCount(); ++k) {
      const Expr& e = NodeAt(k);
      if (e.kind != Expr::Kind::kBinary || !IsRelational(e.binary_op)) continue;
      for (BinaryOp op : kRelational) {
        if (op == e.binary_op) continue;
        Mutate("T1", k, [op](Expr& n) { n.binary_op = op; });
      }
    }
  }

  void Arithmetic() {
    for (size_t k = 0; k < NodeCount(); ++k) {
      const Expr& e = NodeAt(k);
      if (e.kind != Expr::Kind::kBinary || !IsArithmetic(e.binary_op)) continue;
      for (BinaryOp op : kArithmetic) {
        if (op == e.binary_op) continue;
        Mutate("T2", k, [op](Expr& n) { n.binary_op = op; });
      }
    }
  }

  void Boolean() {
    for (size_t k = 0; k < NodeCount(); ++k) {
      const Expr& e = NodeAt(k);
      if (e.kind != Expr::Kind::kBinary || !IsBoolean(e.binary_op)) continue;
      BinaryOp swapped = e.binary_op == BinaryOp::kAnd ? BinaryOp::kOr : BinaryOp::kAnd;
      Mutate("T3", k, [swapped](Expr& n) { n.binary_op = swapped; });
    }
    if (syntax_.kind == LineKind::kIf || syntax_.kind == LineKind::kWhile) {
      LineSyntax copy = syntax_;
      if (copy.expr.kind == Expr::Kind::kUnary && copy.expr.unary_op == UnaryOp::kNot) {
        Expr inner = copy.expr.children[0];
        copy.expr = std::move(inner);
      } else {
        copy.expr = Expr::Unary(UnaryOp::kNot, std::move(copy.expr));
      }
      Replace("T3", PrintLine(copy));
    }
  }

  void Constants() {
    for (size_t k = 0; k < NodeCount(); ++k) {
      const Expr& e = NodeAt(k);
      if (e.kind != Expr::Kind::kLiteral || e.literal.type() != Value::Type::kInt) continue;
      int64_t c = e.literal.as_int();
      for (int64_t v : {Wrapping(c, 1), Wrapping(c, -1), int64_t{0},
                        static_cast<int64_t>(0 - static_cast<uint64_t>(c))}) {
        if (v == c) continue;
        Mutate("T4", k, [v](Expr& n) { n.literal = Value::Int(v); });
      }
    }
  }

  void Indexes() {
    if (syntax_.kind == LineKind::kIndexAssign) {
      for (int64_t delta : {1, -1}) {
        LineSyntax copy = syntax_;
        copy.index = Offset(copy.index, delta);
        Replace("T5", PrintLine(copy));
      }
    }
    for (size_t k = 0; k < NodeCount(); ++k) {
      if (NodeAt(k).kind != Expr::Kind::kIndex) continue;
      for (int64_t delta : {1, -1}) {
        Mutate("T5", k, [delta](Expr& n) {
          Expr shifted = Offset(n.children[1], delta);
          n.children[1] = std::move(shifted);
        });
      }
    }
  }

  void Deletion() {
    if (IsSimple(syntax_.kind)) Add("T6", {EditKind::kDeleteLine, ""});
  }

  void Returns() {
    if (syntax_.kind != LineKind::kReturn) return;
    for (const auto& name : VariablesInScope(ast_, line_)) {
      LineSyntax copy = syntax_;
      copy.expr = Expr::Var(name);
      Replace("T7", PrintLine(copy));
    }
  }

  void Guards() {
    if (!IsSimple(syntax_.kind)) return;
    std::vector<Expr> conditions;
    if (syntax_.kind == LineKind::kIndexAssign) {
      conditions.push_back(InBounds(Expr::Var(syntax_.name), syntax_.index));
    }
    for (size_t k = 0; k < NodeCount(); ++k) {
      const Expr& e = NodeAt(k);
      if (e.kind == Expr::Kind::kBinary &&
          (e.binary_op == BinaryOp::kDiv || e.binary_op == BinaryOp::kMod)) {
        conditions.push_back(Expr::Binary(BinaryOp::kNe, e.children[1], IntLit(0)));
      } else if (e.kind == Expr::Kind::kIndex) {
        conditions.push_back(InBounds(e.children[0], e.children[1]));
      }
    }
    for (const Expr& condition : conditions) {
      LineSyntax guard;
      guard.kind = LineKind::kIf;
      guard.expr = condition;
      Add("T8", {EditKind::kInsertGuard, std::string(indent_) + PrintLine(guard)});
    }
  }

  void Variables() {
    std::vector<std::string> scope = VariablesInScope(ast_, line_);
    for (size_t k = 0; k < NodeCount(); ++k) {
      const Expr& e = NodeAt(k);
      if (e.kind != Expr::Kind::kVar) continue;
      for (const auto& name : scope) {
        if (name == e.name) continue;
        Mutate("T9", k, [&name](Expr& n) { n.name = name; });
      }
    }
  }

  const Ast& ast_;
  int line_;
  std::string original_;
  std::string_view indent_;
  const LineSyntax& syntax_;
  LineSyntax scratch_;
  std::set<std::pair<EditKind, std::string>> seen_;
  std::vector<TemplateInstance> out_;
};

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ValidationResult ValidateAst(const Ast* ast, const TestSuite& suite,
                             std::span<const std::string> failing_ids,
                             uint64_t budget) {
  ValidationResult result;
  if (!ast) {
    result.verdict = Verdict::kUnbuildable;
    return result;
  }
  std::set<std::string> failing(failing_ids.begin(), failing_ids.end());
  std::vector<const TestCase*> order;
  for (const auto& t : suite.tests()) {
    if (failing.count(t.id)) order.push_back(&t);
  }
  for (const auto& t : suite.tests()) {
    if (!failing.count(t.id)) order.push_back(&t);
  }
  for (const TestCase* t : order) {
    Outcome outcome = Evaluate(*ast, *t, budget);
    ++result.tests_executed;
    if (outcome.passed()) continue;
    result.first_failure = t->id;
    if (outcome.cls == OutcomeClass::kBudgetExceeded) {
      result.verdict = Verdict::kBudgetExceeded;
    } else if (failing.count(t->id)) {
      result.verdict = Verdict::kFailsFailingTest;
    } else {
      result.verdict = Verdict::kFailsRegression;
    }
    return result;
  }
  return result;
}

}  // namespace

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kReplaceLine:
      return "ReplaceLine";
    case EditKind::kDeleteLine:
      return "DeleteLine";
    case EditKind::kInsertGuard:
      return "InsertGuard";
  }
  return "?";
}

std::vector<TemplateInstance> ApplicableTemplates(const Ast& ast,
                                                  const SourceProgram& program,
                                                  int line) {
  if (line < 1 || line > program.size()) return {};
  const LineSyntax* syntax = SyntaxAt(ast, line);
  if (!syntax || IsStructural(syntax->kind)) return {};
  return Instantiator(ast, program, line, *syntax).Run();
}

SourceProgram ApplyEdit(const SourceProgram& program, int line, const PatchEdit& edit) {
  std::vector<std::string> lines = program.lines();
  switch (edit.kind) {
    case EditKind::kReplaceLine:
      lines[line - 1] = edit.text;
      break;
    case EditKind::kDeleteLine:
      lines[line - 1] = "";
      break;
    case EditKind::kInsertGuard: {
      std::string end = std::string(Indentation(edit.text)) + "end";
      lines.insert(lines.begin() + line, end);
      lines.insert(lines.begin() + (line - 1), edit.text);
      break;
    }
  }
  return SourceProgram(program.id(), std::move(lines));
}

int64_t ForEachCandidate(const SourceProgram& program, const SuspiciousList& list,
                         int64_t max_candidates,
                         const std::function<bool(const PatchCandidate&)>& visit) {
  if (max_candidates <= 0) return 0;
  ParseResult parsed = Parse(program);
  if (!parsed.ok()) return 0;
  int64_t produced = 0;
  for (const auto& entry : list.entries) {
    for (auto& instance : ApplicableTemplates(*parsed.ast, program, entry.line)) {
      PatchCandidate candidate{instance.template_id, entry.line, instance.edit,
                               ApplyEdit(program, entry.line, instance.edit)};
      ++produced;
      if (!visit(candidate) || produced >= max_candidates) return produced;
    }
  }
  return produced;
}

std::vector<PatchCandidate> GenerateCandidates(const SourceProgram& program,
                                               const SuspiciousList& list,
                                               int64_t max_candidates) {
  std::vector<PatchCandidate> out;
  ForEachCandidate(program, list, max_candidates, [&out](const PatchCandidate& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPlausible:
      return "Plausible";
    case Verdict::kFailsFailingTest:
      return "FailsFailingTest";
    case Verdict::kFailsRegression:
      return "FailsRegression";
    case Verdict::kUnbuildable:
      return "Unbuildable";
    case Verdict::kBudgetExceeded:
      return "BudgetExceeded";
  }
  return "?";
}

ValidationResult ValidatePatch(const SourceProgram& patched, const TestSuite& suite,
                               std::span<const std::string> failing_ids,
                               uint64_t budget) {
  ParseResult parsed = Parse(patched);
  return ValidateAst(parsed.ok() ? &*parsed.ast : nullptr, suite, failing_ids, budget);
}

std::string_view StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kPatched:
      return "Patched";
    case StopReason::kExhausted:
      return "Exhausted";
    case StopReason::kMaxCandidates:
      return "MaxCandidates";
    case StopReason::kMaxNte:
      return "MaxNte";
    case StopReason::kTimeout:
      return "Timeout";
  }
  return "?";
}

RepairResult Repair(const SourceProgram& program, const TestSuite& suite,
                    const SuspiciousList& list, const RepairCaps& caps,
                    uint64_t budget) {
  Clock::time_point start = Clock::now();
  SuiteResult baseline = RunSuite(program, suite, budget);
  if (baseline.failing_ids.empty()) {
    throw Error(ErrorCode::kNoFailingTests, "every test passes on the program to repair");
  }
  RepairResult result;
  bool stopped = false;
  int64_t produced = ForEachCandidate(
      program, list, caps.max_candidates, [&](const PatchCandidate& candidate) {
        if (result.nte >= caps.max_nte) {
          result.stop_reason = StopReason::kMaxNte;
          return !(stopped = true);
        }
        if (MillisSince(start) >= caps.max_seconds * 1000.0) {
          result.stop_reason = StopReason::kTimeout;
          return !(stopped = true);
        }
        ++result.candidates_parsed;
        ParseResult parsed = Parse(candidate.patched);
        if (!parsed.ok()) {
          ++result.unbuildable;
          return true;
        }
        ValidationResult v = ValidateAst(&*parsed.ast, suite, baseline.failing_ids, budget);
        ++result.npc;
        result.nte += v.tests_executed;
        if (v.verdict == Verdict::kPlausible) {
          result.patch = candidate;
          result.stop_reason = StopReason::kPatched;
          return !(stopped = true);
        }
        return true;
      });
  if (!stopped) {
    result.stop_reason = produced >= caps.max_candidates ? StopReason::kMaxCandidates
                                                         : StopReason::kExhausted;
  }
  if (result.patch) result.br = BugRank(list, result.patch->location);
  result.cost_proxy = result.nte + result.candidates_parsed;
  result.rt_ms = MillisSince(start);
  return result;
}

PatchCandidate MapPatchToOriginal(const PatchCandidate& candidate,
                                  std::span<const int> mapping,
                                  const SourceProgram& original) {
  if (candidate.location < 1 || candidate.location > static_cast<int>(mapping.size())) {
    throw Error(ErrorCode::kUnmappableEdit,
                "slice line " + std::to_string(candidate.location) + " has no original line");
  }
  int line = mapping[candidate.location - 1];
  if (line < 1 || line > original.size()) {
    throw Error(ErrorCode::kUnmappableEdit,
                "original line " + std::to_string(line) + " is out of range");
  }
  PatchCandidate mapped = candidate;
  mapped.location = line;
  mapped.patched = ApplyEdit(original, line, candidate.edit);
  return mapped;
}

std::string RepairResultToJson(const RepairResult& result, bool transferred) {
  nlohmann::json doc;
  doc["patched"] = result.patch.has_value();
  if (result.patch) {
    doc["patch"] = {{"line", result.patch->location},
                    {"template", result.patch->template_id},
                    {"edit", std::string(EditKindName(result.patch->edit.kind))},
                    {"new_text", result.patch->edit.text}};
  } else {
    doc["patch"] = nullptr;
  }
  doc["npc"] = result.npc;
  doc["nte"] = result.nte;
  doc["unbuildable"] = result.unbuildable;
  doc["rt_ms"] = result.rt_ms;
  doc["cost_proxy"] = result.cost_proxy;
  doc["br"] = result.br ? nlohmann::json(*result.br) : nlohmann::json(nullptr);
  doc["stop_reason"] = std::string(StopReasonName(result.stop_reason));
  doc["transferred"] = transferred;
  return doc.dump(2) + "\n";
}

}  // namespace reducto
