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

// Observation-based slicing: delete windows of consecutive lines and keep a
// deletion whenever the program still builds and the observed behavior at
// the slicing criterion is unchanged, until no window can be deleted.

#ifndef REDUCTO_SLICER_H_
#define REDUCTO_SLICER_H_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "reducto/interpreter.h"
#include "reducto/source.h"
#include "reducto/test_harness.h"

namespace reducto {

struct SliceSettings {
  int delta = 3;  // maximum window length, >= 1
  uint64_t budget = kDefaultStepBudget;
  int max_passes = 50;
};

// Observe `variable` immediately before `line` for every call in `inputs`.
struct VarTraceCriterion {
  std::string variable;
  int line = 0;
  std::vector<Call> inputs;
};

// Preserve the failure signature of each failing test.
struct TestSignatureCriterion {
  std::vector<TestCase> failing_tests;
};

using SliceCriterion = std::variant<VarTraceCriterion, TestSignatureCriterion>;

struct TraceObservation {
  ObservationTrace trace;
  bool budget_exceeded = false;

  friend bool operator==(const TraceObservation&,
                         const TraceObservation&) = default;
};

using Observation = std::variant<TraceObservation, FailureSignature>;

// One observation per criterion input, in criterion order.
using Baseline = std::vector<Observation>;

struct CriterionWithBaseline {
  SliceCriterion criterion;
  Baseline baseline;
};

// Criterion built from every failing test of `suite` on `program`, with
// failing tests ordered by id. Throws Error(kNoFailingTests).
CriterionWithBaseline BuildCriterion(const SourceProgram& program,
                                     const TestSuite& suite,
                                     uint64_t budget = kDefaultStepBudget);

// Observations of `program` under `criterion`. Lines reported by the
// program are translated through `origin` (identity when empty).
Baseline Observe(const SourceProgram& program, const SliceCriterion& criterion,
                 uint64_t budget, std::span<const int> origin = {});

struct CandidateVerdict {
  enum class Reason { kAccepted, kUnbuildable, kBehaviorChanged };

  Reason reason = Reason::kAccepted;
  int changed_input = -1;  // index into the criterion inputs

  bool accepted() const { return reason == Reason::kAccepted; }
};

// `origin[k - 1]` is the original line of candidate line k; empty means the
// candidate uses the original numbering.
CandidateVerdict CandidateAccepts(const SourceProgram& candidate,
                                  const SliceCriterion& criterion,
                                  const Baseline& baseline,
                                  const SliceSettings& settings,
                                  std::span<const int> origin = {});

struct SliceStats {
  int original_sloc = 0;
  int slice_sloc = 0;
  double percent = 0.0;  // 100 * slice / original
};

struct SliceResult {
  SourceProgram slice;
  std::vector<int> deleted;  // original line numbers, ascending
  // mapping[k - 1] = original line number of slice line k.
  std::vector<int> mapping;
  SliceStats stats;
  bool fixpoint = true;  // false when the pass cap stopped the search
  int passes = 0;
  int candidates_tried = 0;
};

SliceResult OrbsSlice(const SourceProgram& program,
                      const SliceCriterion& criterion, const Baseline& baseline,
                      const SliceSettings& settings = {});

struct MinimalityReport {
  bool minimal = true;
  std::optional<int> counterexample;  // slice line number
};

// 1-minimality: no single-line deletion of the slice is accepted.
MinimalityReport CheckMinimality(const SliceResult& slice,
                                 const SliceCriterion& criterion,
                                 const Baseline& baseline,
                                 const SliceSettings& settings = {});

// Builds a SliceResult from a slice text and its line mapping, validating
// the mapping against the original program. Throws Error(kInvalidSlice).
SliceResult MakeSliceResult(const SourceProgram& original,
                            const SourceProgram& slice,
                            std::vector<int> mapping);

SliceStats ComputeSliceStats(const SourceProgram& original,
                             const SourceProgram& slice);

// Original program with every line not in `keep` blanked, so that line
// numbers stay aligned with the original.
SourceProgram Blanked(const SourceProgram& original, std::span<const int> keep);

}  // namespace reducto

#endif  // REDUCTO_SLICER_H_
