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

#include "reducto/slicer.h"

#include <algorithm>

#include "reducto/error.h"

namespace reducto {

namespace {

Baseline ObserveParsed(const Ast* ast, const SliceCriterion& criterion,
                       uint64_t budget, std::span<const int> origin) {
  Baseline observations;
  if (const auto* var = std::get_if<VarTraceCriterion>(&criterion)) {
    int watch_line = var->line;
    if (!origin.empty()) {
      auto it = std::find(origin.begin(), origin.end(), var->line);
      watch_line = it == origin.end()
                       ? 0
                       : static_cast<int>(it - origin.begin()) + 1;
    }
    for (const auto& input : var->inputs) {
      TraceObservation obs;
      if (ast && !CheckCall(*ast, input)) {
        ExecOptions options;
        options.budget = budget;
        if (watch_line > 0) options.watch = Watch{var->variable, watch_line};
        ExecutionResult r = Execute(*ast, input, options);
        obs.trace = std::move(r.trace);
        obs.budget_exceeded = r.status == ExecStatus::kStepBudgetExceeded;
      }
      observations.emplace_back(std::move(obs));
    }
    return observations;
  }
  for (const auto& test :
       std::get<TestSignatureCriterion>(criterion).failing_tests) {
    Outcome outcome =
        ast ? Evaluate(*ast, test, budget) : Outcome::Unbuildable();
    if (!origin.empty()) outcome = TranslateLines(std::move(outcome), origin);
    observations.emplace_back(Signature(test.id, outcome));
  }
  return observations;
}

// Observation check of an already-parsed candidate, stopping at the first
// differing input.
CandidateVerdict CompareParsed(const Ast& ast, const SliceCriterion& criterion,
                               const Baseline& baseline,
                               const SliceSettings& settings,
                               std::span<const int> origin) {
  Baseline observed = ObserveParsed(&ast, criterion, settings.budget, origin);
  for (size_t i = 0; i < observed.size(); ++i) {
    if (i >= baseline.size() || !(observed[i] == baseline[i])) {
      return CandidateVerdict{CandidateVerdict::Reason::kBehaviorChanged,
                              static_cast<int>(i)};
    }
  }
  return CandidateVerdict{};
}

CandidateVerdict AcceptsBlanked(const SourceProgram& candidate,
                                const SliceCriterion& criterion,
                                const Baseline& baseline,
                                const SliceSettings& settings) {
  ParseResult parsed = Parse(candidate);
  if (!parsed.ok()) {
    return CandidateVerdict{CandidateVerdict::Reason::kUnbuildable};
  }
  return CompareParsed(*parsed.ast, criterion, baseline, settings, {});
}

}  // namespace

CriterionWithBaseline BuildCriterion(const SourceProgram& program,
                                     const TestSuite& suite, uint64_t budget) {
  SuiteResult run = RunSuite(program, suite, budget);
  if (run.failing_ids.empty()) {
    throw Error(ErrorCode::kNoFailingTests,
                "no failing tests on " + program.id() +
                    "; there is no failure to preserve");
  }
  std::vector<std::string> ids = run.failing_ids;
  std::sort(ids.begin(), ids.end());
  TestSignatureCriterion criterion;
  Baseline baseline;
  for (const auto& id : ids) {
    criterion.failing_tests.push_back(*suite.Find(id));
    baseline.emplace_back(Signature(id, run.by_id.at(id)));
  }
  return CriterionWithBaseline{std::move(criterion), std::move(baseline)};
}

Baseline Observe(const SourceProgram& program, const SliceCriterion& criterion,
                 uint64_t budget, std::span<const int> origin) {
  ParseResult parsed = Parse(program);
  return ObserveParsed(parsed.ok() ? &*parsed.ast : nullptr, criterion, budget,
                       origin);
}

CandidateVerdict CandidateAccepts(const SourceProgram& candidate,
                                  const SliceCriterion& criterion,
                                  const Baseline& baseline,
                                  const SliceSettings& settings,
                                  std::span<const int> origin) {
  ParseResult parsed = Parse(candidate);
  if (!parsed.ok()) {
    return CandidateVerdict{CandidateVerdict::Reason::kUnbuildable};
  }
  return CompareParsed(*parsed.ast, criterion, baseline, settings, origin);
}

SourceProgram Blanked(const SourceProgram& original, std::span<const int> keep) {
  std::vector<std::string> lines(original.size());
  for (int line : keep) lines[line - 1] = original.line(line);
  return SourceProgram(original.id(), std::move(lines));
}

SliceStats ComputeSliceStats(const SourceProgram& original,
                             const SourceProgram& slice) {
  SliceStats stats;
  stats.original_sloc = CountSloc(original);
  stats.slice_sloc = CountSloc(slice);
  stats.percent = stats.original_sloc == 0
                      ? 0.0
                      : 100.0 * stats.slice_sloc / stats.original_sloc;
  return stats;
}

SliceResult MakeSliceResult(const SourceProgram& original,
                            const SourceProgram& slice,
                            std::vector<int> mapping) {
  auto invalid = [](const std::string& why) {
    return Error(ErrorCode::kInvalidSlice, "invalid slice: " + why);
  };
  if (static_cast<int>(mapping.size()) != slice.size()) {
    throw invalid("mapping has " + std::to_string(mapping.size()) +
                  " entries for " + std::to_string(slice.size()) + " lines");
  }
  int previous = 0;
  for (int k = 1; k <= slice.size(); ++k) {
    int orig = mapping[k - 1];
    if (orig <= previous || orig > original.size()) {
      throw invalid("mapping is not strictly increasing within the original");
    }
    if (slice.line(k) != original.line(orig)) {
      throw invalid("slice line " + std::to_string(k) +
                    " differs from original line " + std::to_string(orig));
    }
    previous = orig;
  }
  SliceResult result;
  result.slice = slice;
  std::vector<char> survives(original.size() + 1, 0);
  for (int orig : mapping) survives[orig] = 1;
  for (int line = 1; line <= original.size(); ++line) {
    if (!survives[line]) result.deleted.push_back(line);
  }
  result.mapping = std::move(mapping);
  result.stats = ComputeSliceStats(original, slice);
  return result;
}

SliceResult OrbsSlice(const SourceProgram& program,
                      const SliceCriterion& criterion, const Baseline& baseline,
                      const SliceSettings& settings) {
  if (settings.delta < 1) {
    throw Error(ErrorCode::kInvalidArgument, "deletion window must be >= 1");
  }
  std::vector<int> alive(program.size());
  for (int i = 0; i < program.size(); ++i) alive[i] = i + 1;

  SliceResult result;
  result.fixpoint = false;
  for (int pass = 1; pass <= settings.max_passes; ++pass) {
    result.passes = pass;
    bool deleted_any = false;
    size_t i = 0;
    while (i < alive.size()) {
      bool accepted = false;
      for (int w = 1; w <= settings.delta && i + w <= alive.size(); ++w) {
        auto first = alive.begin() + static_cast<std::ptrdiff_t>(i);
        auto last = first + w;
        bool inert = std::all_of(first, last, [&program](int line) {
          return ClassifyLine(program.line(line)) != LineClass::kStatement;
        });
        std::vector<int> keep(alive.begin(), first);
        keep.insert(keep.end(), last, alive.end());
        if (!inert) {
          ++result.candidates_tried;
          if (!AcceptsBlanked(Blanked(program, keep), criterion, baseline,
                              settings)
                   .accepted()) {
            continue;
          }
        }
        alive = std::move(keep);
        accepted = true;
        deleted_any = true;
        break;
      }
      if (!accepted) ++i;
    }
    if (!deleted_any) {
      result.fixpoint = true;
      break;
    }
  }

  std::vector<std::string> lines;
  for (int line : alive) lines.push_back(program.line(line));
  SliceResult built =
      MakeSliceResult(program, SourceProgram(program.id(), std::move(lines)),
                      std::move(alive));
  built.fixpoint = result.fixpoint;
  built.passes = result.passes;
  built.candidates_tried = result.candidates_tried;
  return built;
}

MinimalityReport CheckMinimality(const SliceResult& slice,
                                 const SliceCriterion& criterion,
                                 const Baseline& baseline,
                                 const SliceSettings& settings) {
  MinimalityReport report;
  for (int k = 1; k <= slice.slice.size(); ++k) {
    std::vector<std::string> lines;
    std::vector<int> origin;
    for (int j = 1; j <= slice.slice.size(); ++j) {
      if (j == k) continue;
      lines.push_back(slice.slice.line(j));
      origin.push_back(slice.mapping[j - 1]);
    }
    SourceProgram candidate(slice.slice.id(), std::move(lines));
    if (CandidateAccepts(candidate, criterion, baseline, settings, origin)
            .accepted()) {
      report.minimal = false;
      report.counterexample = k;
      return report;
    }
  }
  return report;
}

}  // namespace reducto
