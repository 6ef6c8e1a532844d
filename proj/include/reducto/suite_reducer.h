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

#ifndef REDUCTO_SUITE_REDUCER_H_
#define REDUCTO_SUITE_REDUCER_H_

#include <string>
#include <vector>

#include "reducto/slicer.h"
#include "reducto/test_harness.h"

namespace reducto {

enum class RemovalReason { kFailsOnSlice, kCoversOnlyDeletedCode };

std::string_view RemovalReasonName(RemovalReason reason);

struct RemovedTest {
  std::string id;
  RemovalReason reason;
};

struct ReducedSuite {
  TestSuite kept;
  std::vector<RemovedTest> removed;  // in suite order
};

// Keeps every failing test of `suite` on `original`, and every passing test
// that still passes on the slice. A removed test whose coverage on the
// original program touches no surviving line is reported as
// kCoversOnlyDeletedCode. Throws Error(kInvalidSlice) when `slice` does not
// match `original`.
ReducedSuite ReduceSuite(const SourceProgram& original, const SliceResult& slice,
                         const TestSuite& suite,
                         uint64_t budget = kDefaultStepBudget);

// Reduction from precomputed outcomes of `suite` on the original program.
ReducedSuite ReduceSuite(const SourceProgram& original, const SliceResult& slice,
                         const TestSuite& suite, const SuiteResult& on_original,
                         uint64_t budget);

struct ReductionViolation {
  std::string id;
  std::string what;
};

// Re-checks a reduction on the slice: kept failing tests must reproduce
// their baseline signature (in original line numbers) and kept passing
// tests must pass. Returns the violations, empty when the reduction holds.
std::vector<ReductionViolation> VerifyReduction(
    const SliceResult& slice, const TestSuite& kept,
    const CriterionWithBaseline& baseline,
    uint64_t budget = kDefaultStepBudget);

std::string ReductionLogToJson(const ReducedSuite& reduced);

}  // namespace reducto

#endif  // REDUCTO_SUITE_REDUCER_H_
