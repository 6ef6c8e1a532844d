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

#include "reducto/fault_loc.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "reducto/error.h"

namespace reducto {

CoverageSpectrum SpectrumFromOutcomes(const SourceProgram& program,
                                      const SuiteResult& run) {
  CoverageSpectrum spectrum;
  ParseResult parsed = Parse(program);
  if (parsed.ok()) {
    for (int line : parsed.ast->executable_lines) spectrum.lines[line] = {};
  }
  for (const Outcome& outcome : run.outcomes) {
    bool passed = outcome.passed();
    (passed ? spectrum.passing : spectrum.failing)++;
    std::set<int> once(outcome.covered.begin(), outcome.covered.end());
    for (int line : once) {
      auto it = spectrum.lines.find(line);
      if (it == spectrum.lines.end()) continue;
      (passed ? it->second.ep : it->second.ef)++;
    }
  }
  return spectrum;
}

CoverageSpectrum CollectSpectrum(const SourceProgram& program,
                                 const TestSuite& suite, uint64_t budget) {
  return SpectrumFromOutcomes(program, RunSuite(program, suite, budget));
}

double Ochiai(int ef, int nf, int ep) {
  double denominator = std::sqrt(static_cast<double>(ef + nf) * (ef + ep));
  if (denominator == 0.0) return 0.0;
  return ef / denominator;
}

std::map<int, double> OchiaiScores(const CoverageSpectrum& spectrum) {
  std::map<int, double> scores;
  for (const auto& [line, counts] : spectrum.lines) {
    scores[line] = Ochiai(counts.ef, spectrum.failing - counts.ef, counts.ep);
  }
  return scores;
}

std::string_view ListProvenanceName(ListProvenance provenance) {
  switch (provenance) {
    case ListProvenance::kL:
      return "L";
    case ListProvenance::kLR:
      return "LR";
    case ListProvenance::kLP:
      return "LP";
  }
  return "?";
}

std::optional<ListProvenance> ListProvenanceFromName(std::string_view name) {
  if (name == "L") return ListProvenance::kL;
  if (name == "LR") return ListProvenance::kLR;
  if (name == "LP") return ListProvenance::kLP;
  return std::nullopt;
}

SuspiciousList Rank(const std::map<int, double>& scores) {
  SuspiciousList list;
  for (const auto& [line, score] : scores) {
    if (score > 0.0) list.entries.push_back({line, score, 0});
  }
  std::stable_sort(list.entries.begin(), list.entries.end(),
                   [](const SuspiciousEntry& a, const SuspiciousEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.line < b.line;
                   });
  for (size_t i = 0; i < list.entries.size(); ++i) {
    list.entries[i].rank = static_cast<int>(i) + 1;
  }
  return list;
}

SuspiciousList PruneList(const SuspiciousList& list, std::span<const int> mapping) {
  std::set<int> surviving(mapping.begin(), mapping.end());
  SuspiciousList pruned;
  pruned.provenance = ListProvenance::kLP;
  for (const auto& entry : list.entries) {
    if (!surviving.count(entry.line)) continue;
    SuspiciousEntry kept = entry;
    kept.rank = static_cast<int>(pruned.entries.size()) + 1;
    pruned.entries.push_back(kept);
  }
  return pruned;
}

SuspiciousList RegenerateList(const SourceProgram& slice, const TestSuite& suite,
                              std::span<const int> mapping, uint64_t budget) {
  SuiteResult run = RunSuite(slice, suite, budget);
  if (run.failing_ids.empty()) {
    throw Error(ErrorCode::kNoFailingTests,
                "reduced suite has no failing test on the slice");
  }
  std::map<int, double> scores = OchiaiScores(SpectrumFromOutcomes(slice, run));
  std::map<int, double> original;
  for (const auto& [line, score] : scores) original[mapping[line - 1]] = score;
  SuspiciousList list = Rank(original);
  list.provenance = ListProvenance::kLR;
  return list;
}

std::optional<int> BugRank(const SuspiciousList& list, int line) {
  for (const auto& entry : list.entries) {
    if (entry.line == line) return entry.rank;
  }
  return std::nullopt;
}

std::string SuspiciousListToJson(const SuspiciousList& list) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& e : list.entries) {
    doc.push_back({{"line", e.line}, {"score", e.score}, {"rank", e.rank}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace reducto
