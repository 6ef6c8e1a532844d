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

#include "reducto/experiment.h"

#include <algorithm>
#include <fstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "reducto/error.h"
#include "tests/support/test_util.h"

namespace reducto {
namespace {

namespace fs = std::filesystem;
using testing::SourcePath;

fs::path Corpus() { return SourcePath("corpus"); }

BugBundle Bundle(const std::string& name) { return LoadBundle(Corpus() / name); }

// A scratch bundle directory removed on destruction.
class ScratchBundle {
 public:
  explicit ScratchBundle(const std::string& name)
      : dir_(fs::temp_directory_path() / ("reducto_experiment_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~ScratchBundle() { fs::remove_all(dir_); }

  void Write(const std::string& file, const std::string& text) const {
    std::ofstream(dir_ / file, std::ios::binary) << text;
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

constexpr char kAddProgram[] = "fn add(a, b)\n  return a - b\nend\n";
constexpr char kManifest[] = R"({"program": "program.sl", "tests": "tests.json"})";

ErrorCode LoadError(const fs::path& dir) {
  try {
    LoadBundle(dir);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "bundle loaded";
  return ErrorCode::kInvalidArgument;
}

// CSV rows without the wall-clock column.
std::vector<std::string> StableRows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string row;
  while (std::getline(in, row)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream cells(row);
    while (std::getline(cells, field, ',')) fields.push_back(field);
    if (!row.empty() && row.back() == ',') fields.push_back("");
    fields.erase(fields.begin() + 10);
    std::string joined;
    for (size_t i = 0; i < fields.size(); ++i) joined += (i ? "," : "") + fields[i];
    rows.push_back(joined);
  }
  return rows;
}

TEST(LoadBundleTest, CorpusBundle) {
  BugBundle b = Bundle("b01_count_above");
  EXPECT_EQ("b01_count_above", b.name);
  ASSERT_TRUE(b.ground_truth.has_value());
  EXPECT_EQ(37, b.ground_truth->bug_line);
  EXPECT_EQ("    if xs[i] > t", b.ground_truth->patched_text);
  EXPECT_FALSE(b.ground_truth->guard);
  EXPECT_TRUE(Bundle("b04_mean_step").ground_truth->guard);
}

TEST(LoadBundleTest, Rejections) {
  ScratchBundle missing("missing");
  EXPECT_EQ(ErrorCode::kManifest, LoadError(missing.dir()));

  ScratchBundle passing("passing");
  passing.Write("manifest.json", kManifest);
  passing.Write("program.sl", "fn add(a, b)\n  return a + b\nend\n");
  passing.Write("tests.json",
                R"([{"id": "t1", "call": {"fn": "add", "args": [{"int": 1}, {"int": 2}]},
                     "expect": {"value": {"int": 3}}}])");
  EXPECT_EQ(ErrorCode::kNoFailingTests, LoadError(passing.dir()));

  ScratchBundle multi("multi");
  multi.Write("manifest.json", kManifest);
  multi.Write("program.sl", kAddProgram);
  multi.Write("tests.json",
              R"([{"id": "t1", "call": {"fn": "add", "args": [{"int": 1}, {"int": 2}]},
                   "expect": [{"value": {"int": 3}}, {"value": {"int": 3}}]}])");
  EXPECT_EQ(ErrorCode::kMultiAssertTest, LoadError(multi.dir()));

  ScratchBundle bad_truth("bad_truth");
  bad_truth.Write("manifest.json",
                  R"({"program": "program.sl", "tests": "tests.json",
                      "ground_truth": {"bug_line": 9}})");
  bad_truth.Write("program.sl", kAddProgram);
  bad_truth.Write("tests.json",
                  R"([{"id": "t1", "call": {"fn": "add", "args": [{"int": 1}, {"int": 2}]},
                       "expect": {"value": {"int": 3}}}])");
  EXPECT_EQ(ErrorCode::kManifest, LoadError(bad_truth.dir()));

  ScratchBundle no_program("no_program");
  no_program.Write("manifest.json", kManifest);
  no_program.Write("tests.json", "[]");
  EXPECT_EQ(ErrorCode::kManifest, LoadError(no_program.dir()));
}

TEST(ListBundlesTest, SortedCorpus) {
  auto dirs = ListBundles(Corpus());
  ASSERT_EQ(12u, dirs.size());
  EXPECT_TRUE(std::is_sorted(dirs.begin(), dirs.end()));
  EXPECT_EQ("b01_count_above", dirs.front().filename());
  EXPECT_THROW(ListBundles(Corpus() / "absent"), Error);
}

TEST(ConfigTest, Lattice) {
  EXPECT_EQ(12u, AllConfigs().size());
  std::vector<std::string> names;
  for (const auto& c : ViableConfigs()) names.push_back(ConfigName(c));
  EXPECT_EQ((std::vector<std::string>{"P-T-L", "P-T-LR", "P-T-LP", "P-Ts-L", "P-Ts-LR",
                                      "P-Ts-LP", "Ps-Ts-LR", "Ps-Ts-LP"}),
            names);
  int rejected = 0;
  for (const auto& c : AllConfigs()) {
    EXPECT_EQ(c, *ConfigFromName(ConfigName(c)));
    rejected += !IsViable(c);
  }
  EXPECT_EQ(4, rejected);
  EXPECT_FALSE(IsViable({ProgramVariant::kPs, SuiteVariant::kT, ListProvenance::kL}));
  EXPECT_FALSE(IsViable({ProgramVariant::kPs, SuiteVariant::kTs, ListProvenance::kL}));
  EXPECT_TRUE(IsViable({ProgramVariant::kP, SuiteVariant::kTs, ListProvenance::kLP}));
  EXPECT_FALSE(ConfigFromName("P-T-LX").has_value());
}

TEST(BundleRunnerTest, RejectsNonViable) {
  BundleRunner runner(Bundle("b08_in_range"), {});
  try {
    runner.Run({ProgramVariant::kPs, SuiteVariant::kT, ListProvenance::kLP});
    FAIL() << "ran a non-viable configuration";
  } catch (const Error& e) {
    EXPECT_EQ(ErrorCode::kNotViable, e.code());
  }
}

// Line 38 (`n = n + 1`) outranks the bug line: failing tests and fewer
// passing tests reach it. Its 12 buildable candidates (4 T2, 3 T4, 1 T6,
// 4 T9) all fail, then the third T1 variant of line 37 is plausible.
TEST(BundleRunnerTest, BaselineOnFirstBundle) {
  BundleRunner runner(Bundle("b01_count_above"), {});
  ASSERT_FALSE(runner.artifacts().l.entries.empty());
  EXPECT_EQ(38, runner.artifacts().l.entries[0].line);
  RepairReport r = runner.Run({});
  EXPECT_EQ("P-T-L", r.config);
  EXPECT_TRUE(r.patched);
  EXPECT_EQ(2, r.br);
  EXPECT_EQ(15, r.npc);
  EXPECT_EQ(37, r.patch_line);
  EXPECT_EQ("T1", r.patch_template);
  EXPECT_TRUE(r.matches_ground_truth);
  EXPECT_EQ(true, r.same_location);
  EXPECT_EQ(true, r.transferred);
  EXPECT_EQ("Patched", r.stop_reason);
  EXPECT_EQ(r.nte + r.npc, r.cost_proxy);
}

TEST(BundleRunnerTest, SlicedConfigTransfers) {
  BundleRunner runner(Bundle("b01_count_above"), {});
  RepairReport r = runner.Run({ProgramVariant::kPs, SuiteVariant::kTs, ListProvenance::kLP});
  EXPECT_TRUE(r.patched);
  EXPECT_EQ(true, r.transferred);
  EXPECT_EQ(37, r.patch_line);  // reported in original coordinates
  auto patched = runner.PatchedProgram({ProgramVariant::kPs, SuiteVariant::kTs,
                                        ListProvenance::kLP});
  ASSERT_TRUE(patched.has_value());
  EXPECT_TRUE(RunSuite(*patched, runner.bundle().tests).failing_ids.empty());
  EXPECT_LT(*r.tss_ts, r.tss_t);
  EXPECT_LT(*r.sloc_ps, r.sloc_p);
}

TEST(BundleRunnerTest, AbsentLocationAfterPruning) {
  BundleRunner runner(Bundle("b02_span_length"), {});
  RepairReport base = runner.Run({});
  ASSERT_TRUE(base.patched);
  const auto& mapping = runner.artifacts().slice->mapping;
  EXPECT_EQ(mapping.end(), std::find(mapping.begin(), mapping.end(), *base.patch_line));
  EXPECT_FALSE(BugRank(*runner.artifacts().lp, *base.patch_line).has_value());
  RepairReport pruned = runner.Run({ProgramVariant::kP, SuiteVariant::kT, ListProvenance::kLP});
  EXPECT_NE(true, pruned.same_location);
}

TEST(BundleRunnerTest, PassCapFailsSlicedConfigsOnly) {
  ExperimentSettings capped;
  capped.slice.max_passes = 1;
  BundleRunner runner(Bundle("b01_count_above"), capped);
  ASSERT_TRUE(runner.artifacts().slice.has_value());
  ASSERT_FALSE(runner.artifacts().slice->fixpoint);
  BundleRunner free_runner(Bundle("b01_count_above"), {});
  for (const auto& c : ViableConfigs()) {
    RepairReport r = runner.Run(c);
    if (c.program == ProgramVariant::kPs) {
      EXPECT_TRUE(r.failed) << ConfigName(c);
      EXPECT_EQ("PassCapExceeded", r.stop_reason);
    } else {
      EXPECT_FALSE(r.failed) << ConfigName(c);
    }
  }
  RepairReport a = runner.Run({});
  RepairReport b = free_runner.Run({});
  EXPECT_EQ(a.npc, b.npc);
  EXPECT_EQ(a.nte, b.nte);
  EXPECT_EQ(a.patch_line, b.patch_line);
}

// A configuration run alone matches the same configuration run after the
// others against the shared artifacts.
TEST(BundleRunnerTest, CachedArtifactsMatchFreshRuns) {
  for (const char* name : {"b04_mean_step", "b07_shipping"}) {
    BugBundle bundle = Bundle(name);
    BundleRunner shared(bundle, {});
    for (const auto& c : ViableConfigs()) shared.Run(c);
    for (const auto& c : ViableConfigs()) {
      BundleRunner fresh(bundle, {});
      auto one = StableRows(ReportsToCsv({fresh.Run(c)}));
      auto cached = StableRows(ReportsToCsv({shared.Run(c)}));
      EXPECT_EQ(one, cached) << name << " " << ConfigName(c);
    }
  }
}

TEST(RunLatticeTest, CorpusRowsAreConsistent) {
  std::vector<BugBundle> bundles;
  for (const auto& d : ListBundles(Corpus())) bundles.push_back(LoadBundle(d));
  auto reports = RunLattice(bundles, {});
  ASSERT_EQ(96u, reports.size());
  for (size_t b = 0; b < bundles.size(); ++b) {
    const RepairReport& base = reports[b * 8];
    for (size_t k = 0; k < 8; ++k) {
      const RepairReport& r = reports[b * 8 + k];
      SCOPED_TRACE(r.bundle + " " + r.config);
      EXPECT_EQ(bundles[b].name, r.bundle);
      EXPECT_EQ(ConfigName(ViableConfigs()[k]), r.config);
      EXPECT_FALSE(r.failed);
      EXPECT_EQ(base.sloc_p, r.sloc_p);
      EXPECT_EQ(base.sloc_ps, r.sloc_ps);
      EXPECT_EQ(base.tss_t, r.tss_t);
      EXPECT_EQ(base.tss_ts, r.tss_ts);
      EXPECT_EQ(r.patched, r.stop_reason == "Patched");
      EXPECT_EQ(r.patched, r.patch_line.has_value());
      EXPECT_EQ(r.patched, r.transferred.has_value());
      if (r.patched && r.config.rfind("Ps", 0) == 0) {
        EXPECT_EQ(true, r.transferred);
      }
      if (r.patched && base.patched) {
        EXPECT_EQ(*r.patch_line == *base.patch_line, r.same_location);
      }
    }
  }
  auto again = RunLattice(bundles, {});
  EXPECT_EQ(StableRows(ReportsToCsv(reports)), StableRows(ReportsToCsv(again)));
}

// Applying the recorded human fix yields a program that passes every test.
TEST(CorpusTest, GroundTruthPassesAllTests) {
  for (const auto& d : ListBundles(Corpus())) {
    BugBundle b = LoadBundle(d);
    SCOPED_TRACE(b.name);
    ASSERT_TRUE(b.ground_truth.has_value());
    const GroundTruth& truth = *b.ground_truth;
    PatchEdit edit{truth.guard ? EditKind::kInsertGuard : EditKind::kReplaceLine,
                   truth.patched_text};
    SourceProgram fixed = ApplyEdit(b.program, truth.bug_line, edit);
    EXPECT_TRUE(RunSuite(fixed, b.tests).failing_ids.empty());

    std::ifstream in(d / "manifest.json");
    auto manifest = nlohmann::json::parse(in);
    int relevant = manifest["bug_relevant_tests"].get<int>();
    EXPECT_GE(b.tests.size(), 40);
    EXPECT_LE(b.tests.size(), 200);
    EXPECT_LE(relevant * 5, b.tests.size());
    EXPECT_EQ(manifest["failing_tests"].get<size_t>(),
              RunSuite(b.program, b.tests).failing_ids.size());
  }
}

TEST(FormatTest, Percent) {
  EXPECT_EQ("4.1", FormatPercent(100.0 * 836 / 20442));
  EXPECT_EQ("0.0", FormatPercent(0.0));
  EXPECT_EQ("100.0", FormatPercent(100.0));
}

TEST(CsvTest, EmptyReportSetIsHeaderOnly) {
  EXPECT_EQ(
      "bundle,config,sloc_p,sloc_ps,slice_pct,tss_t,tss_ts,br,npc,nte,rt_ms,cost_proxy,"
      "patched,patch_line,same_location,transferred,stop_reason\n",
      ReportsToCsv({}));
  EXPECT_EQ("[]\n", ReportsToJson({}));
}

TEST(CsvTest, RoundTripAndJsonAgree) {
  BundleRunner runner(Bundle("b02_span_length"), {});
  std::vector<RepairReport> reports;
  for (const auto& c : ViableConfigs()) reports.push_back(runner.Run(c));
  std::string csv = ReportsToCsv(reports);
  auto parsed = ReportsFromCsv(csv);
  ASSERT_EQ(reports.size(), parsed.size());
  EXPECT_EQ(csv, ReportsToCsv(parsed));

  auto json = nlohmann::json::parse(ReportsToJson(reports));
  ASSERT_EQ(reports.size(), json.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].config, json[i]["config"]);
    EXPECT_EQ(reports[i].npc, json[i]["npc"]);
    EXPECT_EQ(reports[i].nte, json[i]["nte"]);
    EXPECT_EQ(reports[i].patched, json[i]["patched"]);
    EXPECT_EQ(reports[i].br.has_value(), !json[i]["br"].is_null());
  }
  EXPECT_THROW(ReportsFromCsv("bundle,config\n"), Error);
  EXPECT_THROW(ReportsFromCsv(""), Error);
}

TEST(CompareTest, Reductions) {
  RepairReport base;
  base.bundle = "b";
  base.config = "P-T-L";
  base.rt_ms = 10946;
  base.nte = 687946;
  base.npc = 40;
  base.br = 3;
  base.patch_line = 7;
  RepairReport other = base;
  other.config = "Ps-Ts-LP";
  other.rt_ms = 990;
  other.nte = 48492;
  other.npc = 40;
  other.br = 1;
  Comparison c = Compare(base, other);
  EXPECT_EQ("91.0", FormatPercent(*c.rt_reduction));
  EXPECT_EQ("93.0", FormatPercent(*c.nte_reduction));
  EXPECT_EQ(0.0, *c.npc_reduction);
  EXPECT_EQ(-2, c.br_delta);
  EXPECT_EQ(true, c.same_location);

  Comparison same = Compare(base, base);
  EXPECT_EQ(0.0, *same.rt_reduction);
  EXPECT_EQ(0.0, *same.nte_reduction);

  EXPECT_FALSE(PercentReduction(0, 5).has_value());
  EXPECT_EQ(0.0, *PercentReduction(0, 0));
  other.bundle = "c";
  EXPECT_THROW(Compare(base, other), Error);
}

}  // namespace
}  // namespace reducto
