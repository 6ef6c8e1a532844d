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

#include "reducto/suite_reducer.h"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "reducto/error.h"

namespace reducto {

std::string_view RemovalReasonName(RemovalReason reason) {
  return reason == RemovalReason::kFailsOnSlice ? "FailsOnSlice"
                                                : "CoversOnlyDeletedCode";
}

ReducedSuite ReduceSuite(const SourceProgram& original, const SliceResult& slice,
                         const TestSuite& suite, uint64_t budget) {
  return ReduceSuite(original, slice, suite, RunSuite(original, suite, budget),
                     budget);
}

ReducedSuite ReduceSuite(const SourceProgram& original, const SliceResult& slice,
                         const TestSuite& suite, const SuiteResult& on_original,
                         uint64_t budget) {
  // Revalidates the mapping; throws kInvalidSlice.
  MakeSliceResult(original, slice.slice, slice.mapping);

  ParseResult parsed = Parse(slice.slice);
  std::set<int> surviving(slice.mapping.begin(), slice.mapping.end());
  std::vector<TestCase> kept;
  ReducedSuite reduced;
  for (size_t i = 0; i < suite.tests().size(); ++i) {
    const TestCase& test = suite.tests()[i];
    const Outcome& before = on_original.outcomes[i];
    if (!before.passed()) {
      kept.push_back(test);
      continue;
    }
    Outcome after = parsed.ok() ? Evaluate(*parsed.ast, test, budget)
                                : Outcome::Unbuildable();
    if (after.passed()) {
      kept.push_back(test);
      continue;
    }
    bool touches_slice =
        std::any_of(before.covered.begin(), before.covered.end(),
                    [&surviving](int line) { return surviving.count(line) > 0; });
    reduced.removed.push_back(
        RemovedTest{test.id, touches_slice ? RemovalReason::kFailsOnSlice
                                           : RemovalReason::kCoversOnlyDeletedCode});
  }
  reduced.kept = TestSuite(std::move(kept));
  return reduced;
}

std::vector<ReductionViolation> VerifyReduction(
    const SliceResult& slice, const TestSuite& kept,
    const CriterionWithBaseline& baseline, uint64_t budget) {
  std::vector<ReductionViolation> violations;
  ParseResult parsed = Parse(slice.slice);
  if (!parsed.ok()) {
    violations.push_back({"", "slice does not parse"});
    return violations;
  }
  const auto& failing =
      std::get<TestSignatureCriterion>(baseline.criterion).failing_tests;
  std::set<std::string> failing_ids;
  for (size_t i = 0; i < failing.size(); ++i) {
    failing_ids.insert(failing[i].id);
    if (!kept.Find(failing[i].id)) {
      violations.push_back({failing[i].id, "failing test missing from reduced suite"});
    }
  }
  for (const auto& test : kept.tests()) {
    Outcome outcome = TranslateLines(Evaluate(*parsed.ast, test, budget),
                                     slice.mapping);
    if (failing_ids.count(test.id)) {
      size_t index = 0;
      while (failing[index].id != test.id) ++index;
      const auto& want = std::get<FailureSignature>(baseline.baseline[index]);
      if (!(Signature(test.id, outcome) == want)) {
        violations.push_back({test.id, "failure signature differs on the slice"});
      }
    } else if (!outcome.passed()) {
      violations.push_back({test.id, "kept passing test does not pass on the slice"});
    }
  }
  return violations;
}

std::string ReductionLogToJson(const ReducedSuite& reduced) {
  nlohmann::json removed = nlohmann::json::array();
  for (const auto& r : reduced.removed) {
    removed.push_back({{"id", r.id}, {"reason", RemovalReasonName(r.reason)}});
  }
  nlohmann::json doc;
  doc["kept"] = reduced.kept.size();
  doc["removed"] = std::move(removed);
  return doc.dump(2) + "\n";
}

}  // namespace reducto
