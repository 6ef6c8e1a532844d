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

#include <random>

#include "gtest/gtest.h"
#include "reducto/error.h"
#include "reducto/slicer.h"
#include "tests/support/random_program.h"
#include "tests/support/test_util.h"

namespace reducto {
namespace {

using testing::I;
using testing::MustParse;
using testing::Program;
using testing::ValueTest;

std::vector<std::string> Texts(const std::vector<TemplateInstance>& instances,
                               const std::string& id) {
  std::vector<std::string> out;
  for (const auto& i : instances) {
    if (i.template_id == id) out.push_back(i.edit.text);
  }
  return out;
}

SuspiciousList At(std::vector<int> lines) {
  SuspiciousList list;
  for (size_t i = 0; i < lines.size(); ++i) {
    list.entries.push_back({lines[i], 1.0 / (i + 1), static_cast<int>(i) + 1});
  }
  return list;
}

std::vector<std::string> Max3Failing() { return {"t3"}; }

TEST(ApplicableTemplatesTest, RelationalCondition) {
  SourceProgram p = Program({"fn f(a, b)", "  if a < b", "    return a", "  end",
                             "  return b", "end"});
  Ast ast = MustParse(p);
  auto instances = ApplicableTemplates(ast, p, 2);
  EXPECT_EQ((std::vector<std::string>{"  if a <= b", "  if a > b", "  if a >= b",
                                      "  if a == b", "  if a != b"}),
            Texts(instances, "T1"));
  EXPECT_EQ(std::vector<std::string>{"  if not a < b"}, Texts(instances, "T3"));
  EXPECT_EQ("T1", instances.front().template_id);
  // Catalog order holds across the whole sequence.
  for (size_t i = 1; i < instances.size(); ++i) {
    EXPECT_LE(instances[i - 1].template_id, instances[i].template_id);
  }
}

TEST(ApplicableTemplatesTest, ReturnSubstitutesVariablesInScope) {
  SourceProgram p = Program({"fn f(x, y)", "  let z = y", "  return x", "end"});
  Ast ast = MustParse(p);
  auto instances = ApplicableTemplates(ast, p, 3);
  EXPECT_EQ((std::vector<std::string>{"  return y", "  return z"}), Texts(instances, "T7"));
  // T9 would repeat T7 here.
  EXPECT_TRUE(Texts(instances, "T9").empty());
  EXPECT_EQ(std::vector<std::string>{""}, Texts(instances, "T6"));
}

TEST(ApplicableTemplatesTest, NonStatementsHaveNoTemplates) {
  SourceProgram p = Program({"fn f(x)", "  # note", "", "  if x > 0", "  else",
                             "  end", "  return x", "end"});
  Ast ast = MustParse(p);
  for (int line : {1, 2, 3, 5, 6, 8, 0, 99}) {
    EXPECT_TRUE(ApplicableTemplates(ast, p, line).empty()) << line;
  }
}

TEST(ApplicableTemplatesTest, ConstantsIndexesAndGuards) {
  SourceProgram p = Program({"fn f(xs, i, d)", "  let v = xs[i + 1] / d", "  xs[i] = 2",
                             "  return v", "end"});
  Ast ast = MustParse(p);
  auto line2 = ApplicableTemplates(ast, p, 2);
  EXPECT_EQ((std::vector<std::string>{"  let v = xs[i + 2] / d", "  let v = xs[i + 0] / d",
                                      "  let v = xs[i + -1] / d"}),
            Texts(line2, "T4"));
  // xs[i + 2] already came from T4.
  EXPECT_EQ(std::vector<std::string>{"  let v = xs[i] / d"}, Texts(line2, "T5"));
  EXPECT_EQ((std::vector<std::string>{"  if i + 1 >= 0 and i + 1 < len(xs)",
                                      "  if d != 0"}),
            Texts(line2, "T8"));
  auto line3 = ApplicableTemplates(ast, p, 3);
  EXPECT_EQ((std::vector<std::string>{"  xs[i] = 3", "  xs[i] = 1", "  xs[i] = 0",
                                      "  xs[i] = -2"}),
            Texts(line3, "T4"));
  EXPECT_EQ((std::vector<std::string>{"  xs[i + 1] = 2", "  xs[i - 1] = 2"}),
            Texts(line3, "T5"));
  EXPECT_EQ(std::vector<std::string>{"  if i >= 0 and i < len(xs)"}, Texts(line3, "T8"));
}

TEST(ApplyEditTest, GuardWrapsTheLine) {
  SourceProgram p = Program({"fn f(a, b)", "  return a / b", "end"});
  SourceProgram g = ApplyEdit(p, 2, {EditKind::kInsertGuard, "  if b != 0"});
  EXPECT_EQ((std::vector<std::string>{"fn f(a, b)", "  if b != 0", "  return a / b",
                                      "  end", "end"}),
            g.lines());
  SourceProgram d = ApplyEdit(p, 2, {EditKind::kDeleteLine, ""});
  EXPECT_EQ("", d.line(2));
  EXPECT_EQ(p.size(), d.size());
}

TEST(GenerateCandidatesTest, ListOrderThenTemplateOrder) {
  SourceProgram p = testing::Max3();
  Ast ast = MustParse(p);
  auto candidates = GenerateCandidates(p, At({9, 3}), 10000);
  size_t at9 = ApplicableTemplates(ast, p, 9).size();
  size_t at3 = ApplicableTemplates(ast, p, 3).size();
  ASSERT_EQ(at9 + at3, candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    EXPECT_EQ(i < at9 ? 9 : 3, candidates[i].location);
    EXPECT_EQ(ApplyEdit(p, candidates[i].location, candidates[i].edit),
              candidates[i].patched);
  }
}

TEST(GenerateCandidatesTest, CapLimitsTheStream) {
  SourceProgram p = testing::Max3();
  ASSERT_GT(ApplicableTemplates(MustParse(p), p, 3).size(), 5u);
  EXPECT_EQ(5u, GenerateCandidates(p, At({3}), 5).size());
  EXPECT_TRUE(GenerateCandidates(p, At({3}), 0).empty());
}

TEST(GenerateCandidatesTest, Max3StartsWithFirstRelationalVariant) {
  SourceProgram p = testing::Max3();
  SuspiciousList l = Rank(OchiaiScores(CollectSpectrum(p, testing::Max3Suite())));
  auto candidates = GenerateCandidates(p, l, 1);
  ASSERT_EQ(1u, candidates.size());
  EXPECT_EQ("T1", candidates[0].template_id);
  EXPECT_EQ(3, candidates[0].location);
  EXPECT_EQ("    if a < c", candidates[0].edit.text);
}

TEST(ValidatePatchTest, Verdicts) {
  SourceProgram p = testing::Max3();
  TestSuite suite = testing::Max3Suite();
  auto failing = Max3Failing();

  ValidationResult wrong =
      ValidatePatch(ApplyEdit(p, 4, {EditKind::kReplaceLine, "      return b"}), suite, failing);
  EXPECT_EQ(Verdict::kFailsFailingTest, wrong.verdict);
  EXPECT_EQ(1, wrong.tests_executed);
  EXPECT_EQ("t3", wrong.first_failure);

  // Fixes t3 but returns a for t5 too: t3, t1, t2, t4, t5.
  ValidationResult overfit =
      ValidatePatch(ApplyEdit(p, 4, {EditKind::kReplaceLine, "      return a"}), suite, failing);
  EXPECT_EQ(Verdict::kFailsRegression, overfit.verdict);
  EXPECT_EQ(5, overfit.tests_executed);
  EXPECT_EQ("t5", overfit.first_failure);

  ValidationResult fixed =
      ValidatePatch(ApplyEdit(p, 3, {EditKind::kReplaceLine, "    if a < c"}), suite, failing);
  EXPECT_EQ(Verdict::kPlausible, fixed.verdict);
  EXPECT_EQ(suite.size(), fixed.tests_executed);

  ValidationResult broken =
      ValidatePatch(ApplyEdit(p, 3, {EditKind::kDeleteLine, ""}), suite, failing);
  EXPECT_EQ(Verdict::kUnbuildable, broken.verdict);
  EXPECT_EQ(0, broken.tests_executed);

  SourceProgram loop = Program({"fn max3(a, b, c)", "  while true", "  end", "end"});
  ValidationResult spin = ValidatePatch(loop, suite, failing, 1000);
  EXPECT_EQ(Verdict::kBudgetExceeded, spin.verdict);
  EXPECT_EQ(1, spin.tests_executed);
}

TEST(RepairTest, Max3FirstCandidateIsPlausible) {
  SourceProgram p = testing::Max3();
  SuspiciousList l = Rank(OchiaiScores(CollectSpectrum(p, testing::Max3Suite())));
  RepairResult r = Repair(p, testing::Max3Suite(), l);
  ASSERT_TRUE(r.patch.has_value());
  EXPECT_EQ(StopReason::kPatched, r.stop_reason);
  EXPECT_EQ(1, r.npc);
  EXPECT_EQ(6, r.nte);
  EXPECT_EQ(3, r.patch->location);
  EXPECT_EQ(1, r.br);
  EXPECT_EQ(r.nte + r.candidates_parsed, r.cost_proxy);
}

TEST(RepairTest, ZeroCandidateCap) {
  SourceProgram p = testing::Max3();
  RepairCaps caps;
  caps.max_candidates = 0;
  RepairResult r = Repair(p, testing::Max3Suite(), At({3}), caps);
  EXPECT_FALSE(r.patch.has_value());
  EXPECT_EQ(0, r.npc);
  EXPECT_EQ(StopReason::kMaxCandidates, r.stop_reason);
  EXPECT_EQ(std::nullopt, r.br);
}

TEST(RepairTest, NteCapStopsBeforeNextCandidate) {
  SourceProgram p = testing::Max3();
  RepairCaps caps;
  caps.max_nte = 1;
  // Line 11 has no fix; its first candidate runs at least one test.
  RepairResult r = Repair(p, testing::Max3Suite(), At({11, 3}), caps);
  EXPECT_FALSE(r.patch.has_value());
  EXPECT_EQ(StopReason::kMaxNte, r.stop_reason);
  EXPECT_EQ(1, r.npc);
}

TEST(RepairTest, ExhaustedWhenNoCandidateWorks) {
  SourceProgram p = testing::Max3();
  RepairResult r = Repair(p, testing::Max3Suite(), At({11}));
  EXPECT_FALSE(r.patch.has_value());
  EXPECT_EQ(StopReason::kExhausted, r.stop_reason);
  EXPECT_EQ(static_cast<int64_t>(GenerateCandidates(p, At({11}), 10000).size()),
            r.candidates_parsed);
}

TEST(RepairTest, RequiresAFailingTest) {
  SourceProgram p = testing::Max3();
  TestSuite passing({ValueTest("t", "max3", {I(1), I(2), I(3)}, I(3))});
  EXPECT_THROW(Repair(p, passing, At({3})), Error);
}

TEST(RepairTest, BetterRankNeverCostsMoreCandidates) {
  SourceProgram p = testing::Max3();
  RepairResult late = Repair(p, testing::Max3Suite(), At({9, 2, 3}));
  RepairResult early = Repair(p, testing::Max3Suite(), At({2, 3}));
  ASSERT_TRUE(late.patch && early.patch);
  EXPECT_LE(early.npc, late.npc);
  EXPECT_EQ(late.patch->location, early.patch->location);
}

// Early-exit soundness and NTE additivity, checked against full suite runs
// over every candidate of several programs.
TEST(RepairPropertyTest, ValidationAgreesWithFullRuns) {
  std::mt19937 rng(99);
  std::vector<std::pair<SourceProgram, TestSuite>> subjects = {
      {testing::Max3(), testing::Max3Suite()}};
  while (subjects.size() < 12) {
    SourceProgram p = testing::RandomProgram(rng, 18);
    std::vector<TestCase> tests;
    int k = 0;
    for (const auto& call : testing::RandomCalls(rng, 6)) {
      TestCase probe{"t" + std::to_string(k++), call, ExpectValue{I(-999)}};
      Outcome o = RunTest(p, probe, 3000);
      if (o.cls != OutcomeClass::kFail) continue;
      const Value& actual = std::get<Value>(*o.actual);
      bool wrong = tests.empty() && actual.type() == Value::Type::kInt;
      probe.expectation = ExpectValue{wrong ? I(actual.as_int() + 1) : actual};
      tests.push_back(probe);
    }
    if (tests.size() < 2 || std::get<ExpectValue>(tests[0].expectation).value ==
                                I(-999)) {
      continue;
    }
    subjects.emplace_back(p, TestSuite(tests));
  }
  int plausible = 0, rejected = 0;
  for (const auto& [p, suite] : subjects) {
    SuiteResult base = RunSuite(p, suite, 3000);
    if (base.failing_ids.empty()) continue;
    std::vector<int> lines;
    for (int line = 1; line <= p.size(); ++line) lines.push_back(line);
    SuspiciousList all = At(lines);
    int64_t expected_nte = 0, expected_npc = 0;
    std::optional<int> first_plausible;
    auto candidates = GenerateCandidates(p, all, 400);
    for (size_t i = 0; i < candidates.size(); ++i) {
      ValidationResult v = ValidatePatch(candidates[i].patched, suite, base.failing_ids, 3000);
      SuiteResult full = RunSuite(candidates[i].patched, suite, 3000);
      bool all_pass = full.failing_ids.empty() && Parse(candidates[i].patched).ok();
      EXPECT_EQ(all_pass, v.verdict == Verdict::kPlausible) << candidates[i].patched.ToText();
      EXPECT_LE(v.tests_executed, suite.size());
      if (v.verdict == Verdict::kPlausible) {
        EXPECT_EQ(suite.size(), v.tests_executed);
        ++plausible;
      } else {
        ++rejected;
      }
      if (!first_plausible) {
        if (v.verdict != Verdict::kUnbuildable) ++expected_npc;
        expected_nte += v.tests_executed;
        if (v.verdict == Verdict::kPlausible) first_plausible = static_cast<int>(i);
      }
    }
    RepairCaps caps;
    caps.max_candidates = 400;
    RepairResult r = Repair(p, suite, all, caps, 3000);
    EXPECT_EQ(first_plausible.has_value(), r.patch.has_value());
    EXPECT_EQ(expected_npc, r.npc);
    EXPECT_EQ(expected_nte, r.nte);
    RepairResult again = Repair(p, suite, all, caps, 3000);
    EXPECT_EQ(r.npc, again.npc);
    EXPECT_EQ(r.nte, again.nte);
    EXPECT_EQ(r.patch.has_value(), again.patch.has_value());
    if (r.patch) EXPECT_EQ(r.patch->patched, again.patch->patched);
  }
  EXPECT_GT(plausible, 0);
  EXPECT_GT(rejected, 100);
}

TEST(MapPatchToOriginalTest, FollowsTheMapping) {
  SourceProgram p = testing::Max3();
  CriterionWithBaseline cb = BuildCriterion(p, testing::Max3Suite());
  SliceResult s = OrbsSlice(p, cb.criterion, cb.baseline);
  ASSERT_EQ(testing::Max3SliceMapping(), s.mapping);
  // Slice line 6 is original line 10.
  PatchCandidate on_slice{"T6", 6, {EditKind::kReplaceLine, "  end"},
                          ApplyEdit(s.slice, 6, {EditKind::kReplaceLine, "  end"})};
  PatchCandidate mapped = MapPatchToOriginal(on_slice, s.mapping, p);
  EXPECT_EQ(10, mapped.location);
  EXPECT_EQ(ApplyEdit(p, 10, on_slice.edit), mapped.patched);

  std::vector<int> identity(p.size());
  for (int i = 0; i < p.size(); ++i) identity[i] = i + 1;
  PatchCandidate fix{"T1", 3, {EditKind::kReplaceLine, "    if a < c"},
                     ApplyEdit(p, 3, {EditKind::kReplaceLine, "    if a < c"})};
  EXPECT_EQ(fix.patched, MapPatchToOriginal(fix, identity, p).patched);

  PatchCandidate outside = fix;
  outside.location = 40;
  try {
    MapPatchToOriginal(outside, s.mapping, p);
    FAIL() << "expected an unmappable edit";
  } catch (const Error& e) {
    EXPECT_EQ(ErrorCode::kUnmappableEdit, e.code());
  }
}

TEST(MapPatchToOriginalTest, SlicePatchTransfers) {
  SourceProgram p = testing::Fixture("helper_only.sl");
  TestSuite suite({ValueTest("square", "area", {I(2), I(2)}, I(4)),
                   ValueTest("twice", "twice", {I(3)}, I(6)),
                   ValueTest("rect", "area", {I(2), I(3)}, I(6))});
  CriterionWithBaseline cb = BuildCriterion(p, suite);
  SliceResult s = OrbsSlice(p, cb.criterion, cb.baseline);
  ASSERT_EQ((std::vector<int>{1, 2, 6}), s.mapping);
  TestSuite ts = suite.Subset(std::vector<std::string>{"square", "rect"});
  RepairResult r = Repair(s.slice, ts, At({2}));
  ASSERT_TRUE(r.patch.has_value());
  EXPECT_EQ("  return w * h", r.patch->edit.text);
  PatchCandidate mapped = MapPatchToOriginal(*r.patch, s.mapping, p);
  EXPECT_EQ(2, mapped.location);
  EXPECT_TRUE(RunSuite(mapped.patched, suite).failing_ids.empty());
}

// The max3 slice keeps only the `return c` path, so no single-line edit
// satisfies both t3 and t5 there.
TEST(RepairTest, Max3SliceHasNoPatch) {
  SourceProgram p = testing::Max3();
  CriterionWithBaseline cb = BuildCriterion(p, testing::Max3Suite());
  SliceResult s = OrbsSlice(p, cb.criterion, cb.baseline);
  TestSuite ts = testing::Max3Suite().Subset(testing::Max3KeptIds());
  std::vector<int> lines;
  for (int line = 1; line <= s.slice.size(); ++line) lines.push_back(line);
  RepairResult r = Repair(s.slice, ts, At(lines));
  EXPECT_FALSE(r.patch.has_value());
  EXPECT_EQ(StopReason::kExhausted, r.stop_reason);
}

TEST(RepairResultTest, JsonShape) {
  SourceProgram p = testing::Max3();
  RepairResult r = Repair(p, testing::Max3Suite(), At({3}));
  std::string json = RepairResultToJson(r, true);
  EXPECT_NE(std::string::npos, json.find("\"template\": \"T1\""));
  EXPECT_NE(std::string::npos, json.find("\"stop_reason\": \"Patched\""));
  EXPECT_NE(std::string::npos, json.find("\"transferred\": true"));
}

}  // namespace
}  // namespace reducto
