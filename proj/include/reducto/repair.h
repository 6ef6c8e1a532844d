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

// Template-based repair with test-driven validation.
//
// Templates, in catalog order:
//   T1 relational operator replacement
//   T2 arithmetic operator replacement
//   T3 boolean operator swap, then condition negation
//   T4 integer constant mutation (+1, -1, 0, negate)
//   T5 index off by one
//   T6 statement deletion
//   T7 returned expression replaced by another variable in scope
//   T8 guard insertion (nonzero divisor, index in bounds)
//   T9 variable use replaced by another variable in scope
// Operator, literal and variable positions are visited left to right.

#ifndef REDUCTO_REPAIR_H_
#define REDUCTO_REPAIR_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/ast.h"
#include "reducto/fault_loc.h"
#include "reducto/source.h"
#include "reducto/test_harness.h"

namespace reducto {

enum class EditKind { kReplaceLine, kDeleteLine, kInsertGuard };

std::string_view EditKindName(EditKind kind);

struct PatchEdit {
  EditKind kind = EditKind::kReplaceLine;
  // kReplaceLine: the new line. kInsertGuard: the guard line placed above
  // the target; an `end` line follows it. Unused for kDeleteLine.
  std::string text;

  friend bool operator==(const PatchEdit&, const PatchEdit&) = default;
};

// One instantiation of a template at a line.
struct TemplateInstance {
  std::string template_id;  // "T1".."T9"
  PatchEdit edit;

  friend bool operator==(const TemplateInstance&, const TemplateInstance&) = default;
};

// Instantiations for `line` of `program`, in catalog order. Instances that
// reproduce the line or repeat an earlier instance are dropped. Empty for
// blank, comment and block-marker lines.
std::vector<TemplateInstance> ApplicableTemplates(const Ast& ast,
                                                  const SourceProgram& program,
                                                  int line);

// Deleted lines are blanked, so line numbers after the edit are unchanged
// except for guard insertion, which adds two lines.
SourceProgram ApplyEdit(const SourceProgram& program, int line, const PatchEdit& edit);

struct PatchCandidate {
  std::string template_id;
  int location = 0;  // line of the program the candidate was generated on
  PatchEdit edit;
  SourceProgram patched;
};

struct RepairCaps {
  int64_t max_candidates = 2000;
  int64_t max_nte = 500000;
  double max_seconds = 120.0;
};

// Candidates for every line of `list` in rank order, each line's
// instantiations in template order. Lines that are not statements of
// `program` contribute nothing. Stops after `max_candidates`.
std::vector<PatchCandidate> GenerateCandidates(const SourceProgram& program,
                                               const SuspiciousList& list,
                                               int64_t max_candidates);

// Streaming form: `visit` returns false to stop. Returns the number of
// candidates produced.
int64_t ForEachCandidate(const SourceProgram& program, const SuspiciousList& list,
                         int64_t max_candidates,
                         const std::function<bool(const PatchCandidate&)>& visit);

enum class Verdict {
  kPlausible,
  kFailsFailingTest,
  kFailsRegression,
  kUnbuildable,
  kBudgetExceeded,
};

std::string_view VerdictName(Verdict verdict);

struct ValidationResult {
  Verdict verdict = Verdict::kPlausible;
  int tests_executed = 0;
  std::optional<std::string> first_failure;
};

// Runs the failing tests first and then the rest, each group in suite order,
// stopping at the first test that does not pass.
ValidationResult ValidatePatch(const SourceProgram& patched, const TestSuite& suite,
                               std::span<const std::string> failing_ids,
                               uint64_t budget = kDefaultStepBudget);

enum class StopReason {
  kPatched,
  kExhausted,       // every candidate was validated
  kMaxCandidates,
  kMaxNte,
  kTimeout,
};

std::string_view StopReasonName(StopReason reason);

struct RepairResult {
  std::optional<PatchCandidate> patch;
  StopReason stop_reason = StopReason::kExhausted;
  int64_t npc = 0;                // candidates submitted to validation
  int64_t nte = 0;                // test executions during validation
  int64_t unbuildable = 0;        // candidates that did not parse
  int64_t candidates_parsed = 0;  // npc + unbuildable
  double rt_ms = 0.0;
  int64_t cost_proxy = 0;         // nte + candidates_parsed
  std::optional<int> br;          // rank of the patched line in the list
};

// Validates candidates in order until one is plausible or a cap is hit.
// Throws Error(kNoFailingTests) when every test passes on `program`.
RepairResult Repair(const SourceProgram& program, const TestSuite& suite,
                    const SuspiciousList& list, const RepairCaps& caps = {},
                    uint64_t budget = kDefaultStepBudget);

// Re-applies a candidate found on a slice to the original program. `mapping`
// takes slice line k to original line mapping[k - 1]. Throws
// Error(kUnmappableEdit) when the location has no original line.
PatchCandidate MapPatchToOriginal(const PatchCandidate& candidate,
                                  std::span<const int> mapping,
                                  const SourceProgram& original);

std::string RepairResultToJson(const RepairResult& result, bool transferred);

}  // namespace reducto

#endif  // REDUCTO_REPAIR_H_
