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

// Bug bundles, the configuration lattice, and report emission.

#ifndef REDUCTO_EXPERIMENT_H_
#define REDUCTO_EXPERIMENT_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/fault_loc.h"
#include "reducto/repair.h"
#include "reducto/slicer.h"
#include "reducto/source.h"
#include "reducto/suite_reducer.h"
#include "reducto/test_harness.h"

namespace reducto {

struct GroundTruth {
  int bug_line = 0;
  std::string patched_text;
  // The fix wraps the bug line in an if block opened by `patched_text`.
  bool guard = false;
};

struct BugBundle {
  std::string name;
  std::filesystem::path dir;
  SourceProgram program;
  TestSuite tests;
  std::optional<GroundTruth> ground_truth;
};

// Reads <dir>/manifest.json. Throws Error(kManifest) for a missing or
// malformed manifest, Error(kMultiAssertTest) for a test with several
// expectations, and Error(kNoFailingTests) when every test passes.
BugBundle LoadBundle(const std::filesystem::path& dir);

// Bundle directories (those holding a manifest.json) under `corpus`, sorted
// by name.
std::vector<std::filesystem::path> ListBundles(const std::filesystem::path& corpus);

enum class ProgramVariant { kP, kPs };
enum class SuiteVariant { kT, kTs };

struct RepairConfig {
  ProgramVariant program = ProgramVariant::kP;
  SuiteVariant suite = SuiteVariant::kT;
  ListProvenance list = ListProvenance::kL;

  friend bool operator==(const RepairConfig&, const RepairConfig&) = default;
};

std::string ConfigName(const RepairConfig& config);  // e.g. "Ps-Ts-LP"
std::optional<RepairConfig> ConfigFromName(std::string_view name);

// A reduced program cannot run the full suite or use the list computed on
// the full program.
bool IsViable(const RepairConfig& config);

// The viable configurations in report order.
const std::vector<RepairConfig>& ViableConfigs();

// All twelve combinations.
std::vector<RepairConfig> AllConfigs();

struct ExperimentSettings {
  SliceSettings slice;
  RepairCaps caps;
  uint64_t budget = kDefaultStepBudget;  // per test execution
};

// Per-bundle products shared by every configuration.
struct BundleArtifacts {
  SuiteResult on_original;
  SuspiciousList l;
  int sloc_p = 0;
  // Set when slicing or a later reduction stage failed; configurations that
  // need the failed product report it.
  std::optional<std::string> slice_error;
  std::optional<SliceResult> slice;
  std::optional<ReducedSuite> reduced;
  std::optional<SuspiciousList> lp;
  std::optional<SuspiciousList> lr;
  std::optional<std::string> lr_error;
  double slice_ms = 0.0;
  double reduce_ms = 0.0;
  double localize_ms = 0.0;
};

BundleArtifacts BuildArtifacts(const BugBundle& bundle,
                               const ExperimentSettings& settings);

struct RepairReport {
  std::string bundle;
  std::string config;
  int sloc_p = 0;
  std::optional<int> sloc_ps;
  std::optional<double> slice_pct;
  int tss_t = 0;
  std::optional<int> tss_ts;
  std::optional<int> br;
  int64_t npc = 0;
  int64_t nte = 0;
  double rt_ms = 0.0;
  int64_t cost_proxy = 0;
  bool patched = false;
  std::optional<int> patch_line;  // original line numbers
  std::optional<std::string> patch_template;
  std::optional<std::string> patch_text;
  std::optional<bool> same_location;
  std::optional<bool> transferred;
  bool matches_ground_truth = false;
  std::string stop_reason;
  bool failed = false;  // a pipeline stage failed for this configuration
};

// Runs configurations of one bundle against shared artifacts. The baseline
// P-T-L result, needed for the same-location column, is computed once on
// first use.
class BundleRunner {
 public:
  BundleRunner(BugBundle bundle, ExperimentSettings settings);

  const BugBundle& bundle() const { return bundle_; }
  const BundleArtifacts& artifacts() const { return artifacts_; }

  // Throws Error(kNotViable) for a non-viable configuration.
  RepairReport Run(const RepairConfig& config);

  // The patched original program of the last successful run of `config`.
  std::optional<SourceProgram> PatchedProgram(const RepairConfig& config) const;

 private:
  RepairReport RunUncached(const RepairConfig& config);

  BugBundle bundle_;
  ExperimentSettings settings_;
  BundleArtifacts artifacts_;
  std::vector<std::pair<RepairConfig, RepairReport>> done_;
  std::vector<std::pair<RepairConfig, SourceProgram>> patched_;
};

// Every configuration in `configs` (all viable ones by default) for every
// bundle, in bundle then configuration order. Bundles that fail to load
// are rethrown.
std::vector<RepairReport> RunLattice(const std::vector<BugBundle>& bundles,
                                     const ExperimentSettings& settings,
                                     const std::vector<RepairConfig>& configs = ViableConfigs());

// Percentages print with one decimal.
std::string FormatPercent(double value);

std::string ReportsToCsv(const std::vector<RepairReport>& reports);
std::string ReportsToJson(const std::vector<RepairReport>& reports);
// Throws Error(kInvalidArgument) on a malformed document.
std::vector<RepairReport> ReportsFromCsv(const std::string& text);

// Percentage reduction (base - other) / base * 100; nullopt when base is 0
// and other is not.
std::optional<double> PercentReduction(double base, double other);

struct Comparison {
  std::string bundle;
  std::string base_config;
  std::string other_config;
  std::optional<double> rt_reduction;
  std::optional<double> nte_reduction;
  std::optional<double> npc_reduction;
  std::optional<int> br_delta;  // other - base, when both patched
  std::optional<bool> same_location;
};

Comparison Compare(const RepairReport& base, const RepairReport& other);

}  // namespace reducto

#endif  // REDUCTO_EXPERIMENT_H_
