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

// Spectrum-based fault localization with the Ochiai formula.

#ifndef REDUCTO_FAULT_LOC_H_
#define REDUCTO_FAULT_LOC_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/source.h"
#include "reducto/test_harness.h"

namespace reducto {

// Per-line execution counts over failing (ef) and passing (ep) tests. A test
// contributes at most one to a line.
struct LineSpectrum {
  int ef = 0;
  int ep = 0;

  friend bool operator==(const LineSpectrum&, const LineSpectrum&) = default;
};

struct CoverageSpectrum {
  std::map<int, LineSpectrum> lines;  // every executable line
  int failing = 0;
  int passing = 0;

  int nf(int line) const { return failing - lines.at(line).ef; }
  int np(int line) const { return passing - lines.at(line).ep; }

  friend bool operator==(const CoverageSpectrum&,
                         const CoverageSpectrum&) = default;
};

CoverageSpectrum CollectSpectrum(const SourceProgram& program,
                                 const TestSuite& suite,
                                 uint64_t budget = kDefaultStepBudget);

// Spectrum from outcomes already computed on `program`. Coverage is taken
// as recorded in the outcomes.
CoverageSpectrum SpectrumFromOutcomes(const SourceProgram& program,
                                      const SuiteResult& run);

// ef / sqrt((ef + nf) * (ef + ep)), and 0 when the denominator is 0.
double Ochiai(int ef, int nf, int ep);

std::map<int, double> OchiaiScores(const CoverageSpectrum& spectrum);

enum class ListProvenance { kL, kLR, kLP };

std::string_view ListProvenanceName(ListProvenance provenance);  // L, LR, LP
std::optional<ListProvenance> ListProvenanceFromName(std::string_view name);

struct SuspiciousEntry {
  int line = 0;
  double score = 0.0;
  int rank = 0;

  friend bool operator==(const SuspiciousEntry&, const SuspiciousEntry&) = default;
};

struct SuspiciousList {
  ListProvenance provenance = ListProvenance::kL;
  std::vector<SuspiciousEntry> entries;

  friend bool operator==(const SuspiciousList&, const SuspiciousList&) = default;
};

// Descending score, ties by ascending line; zero scores are dropped.
SuspiciousList Rank(const std::map<int, double>& scores);

// Keeps the entries whose line survives in `mapping` (slice line k maps to
// original line mapping[k - 1]), in order, with ranks renumbered.
SuspiciousList PruneList(const SuspiciousList& list, std::span<const int> mapping);

// Localization on the slice and reduced suite, reported in original line
// numbers. Throws Error(kNoFailingTests) when the reduced suite has no
// failing test on the slice.
SuspiciousList RegenerateList(const SourceProgram& slice, const TestSuite& suite,
                              std::span<const int> mapping,
                              uint64_t budget = kDefaultStepBudget);

// Rank of `line`, or nullopt when the line is not in the list.
std::optional<int> BugRank(const SuspiciousList& list, int line);

std::string SuspiciousListToJson(const SuspiciousList& list);

}  // namespace reducto

#endif  // REDUCTO_FAULT_LOC_H_
