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

// Command-line front end over the C interface.
//
// Exit codes: 0 success, 1 a configuration failed in a pipeline stage,
// 2 a corpus, manifest or usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "reducto/reducto.h"

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kConfigFailed = 1;
constexpr int kCorpusError = 2;

struct BundleFree {
  void operator()(reducto_bundle* b) const { reducto_bundle_free(b); }
};
struct SliceFree {
  void operator()(reducto_slice* s) const { reducto_slice_free(s); }
};
struct ReportsFree {
  void operator()(reducto_report_set* r) const { reducto_report_set_free(r); }
};
using Bundle = std::unique_ptr<reducto_bundle, BundleFree>;
using Slice = std::unique_ptr<reducto_slice, SliceFree>;
using Reports = std::unique_ptr<reducto_report_set, ReportsFree>;

// Thrown to leave a subcommand with an exit code after printing the error.
struct Exit {
  int code;
};

void Check(reducto_status status) {
  if (status == REDUCTO_OK) return;
  std::cerr << "reducto: " << reducto_status_name(status) << ": " << reducto_last_error()
            << "\n";
  throw Exit{kCorpusError};
}

std::string Take(char* s) {
  std::string out(s);
  reducto_string_free(s);
  return out;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "reducto: cannot write " << path << "\n";
    throw Exit{kCorpusError};
  }
  std::cout << "wrote " << path.string() << "\n";
}

Bundle OpenBundle(const std::string& dir) {
  reducto_bundle* b = nullptr;
  Check(reducto_bundle_open(dir.c_str(), &b));
  return Bundle(b);
}

Slice LoadSlice(const reducto_bundle* bundle, const std::string& dir) {
  reducto_slice* s = nullptr;
  Check(reducto_slice_load(bundle, dir.c_str(), &s));
  return Slice(s);
}

struct SliceArgs {
  std::string bundle;
  int delta = 3;
  int max_passes = 50;
  std::string out = "slice";
};

int RunSlice(const SliceArgs& a) {
  Bundle b = OpenBundle(a.bundle);
  reducto_slice* raw = nullptr;
  Check(reducto_slice_compute(b.get(), a.delta, a.max_passes, &raw));
  Slice s(raw);
  Check(reducto_slice_write(s.get(), a.out.c_str()));
  std::cout << "slice of " << reducto_bundle_name(b.get()) << ": "
            << reducto_slice_sloc(s.get()) << " SLoC in " << a.out << "\n";
  if (!reducto_slice_fixpoint(s.get())) {
    std::cerr << "reducto: pass cap reached before a fixpoint\n";
    return kConfigFailed;
  }
  return kOk;
}

struct ReduceArgs {
  std::string bundle;
  std::string slice;
  std::string out;
};

int RunReduce(const ReduceArgs& a) {
  Bundle b = OpenBundle(a.bundle);
  Slice s = LoadSlice(b.get(), a.slice);
  std::string out = a.out.empty() ? a.slice : a.out;
  Check(reducto_reduce_tests(b.get(), s.get(), out.c_str()));
  std::cout << "wrote " << (fs::path(out) / "tests_reduced.json").string() << " and "
            << (fs::path(out) / "reduction_log.json").string() << "\n";
  return kOk;
}

struct LocalizeArgs {
  std::string bundle;
  std::string slice;
  std::string list = "L";
  std::string out = ".";
};

int RunLocalize(const LocalizeArgs& a) {
  Bundle b = OpenBundle(a.bundle);
  Slice s;
  if (!a.slice.empty()) s = LoadSlice(b.get(), a.slice);
  char* json = nullptr;
  Check(reducto_localize(b.get(), s.get(), a.list.c_str(), &json));
  WriteFile(fs::path(a.out) / ("suspicious_" + a.list + ".json"), Take(json));
  return kOk;
}

struct RepairArgs {
  std::string bundle;
  std::string config;
  reducto_caps caps{};
  std::string out = ".";
};

int RunRepair(const RepairArgs& a) {
  Bundle b = OpenBundle(a.bundle);
  char* json = nullptr;
  Check(reducto_repair(b.get(), a.config.c_str(), &a.caps, &json));
  std::string text = Take(json);
  WriteFile(fs::path(a.out) / "repair_result.json", text);
  return text.find("\"failed\": true") != std::string::npos ? kConfigFailed : kOk;
}

struct ExperimentArgs {
  std::string corpus;
  std::string configs = "all";
  std::string out;
  std::string format = "csv";
  reducto_caps caps{};
};

int RunExperiment(const ExperimentArgs& a) {
  reducto_report_set* raw = nullptr;
  Check(reducto_experiment_run(a.corpus.c_str(), a.configs.c_str(), &a.caps, &raw));
  Reports reports(raw);
  char* text = nullptr;
  Check(a.format == "json" ? reducto_report_set_json(reports.get(), &text)
                           : reducto_report_set_csv(reports.get(), &text));
  std::string body = Take(text);
  if (a.out.empty()) {
    std::cout << body;
  } else {
    WriteFile(a.out, body);
  }
  size_t failures = reducto_report_set_failures(reports.get());
  if (failures > 0) {
    std::cerr << "reducto: " << failures << " of " << reducto_report_set_size(reports.get())
              << " configurations failed\n";
    return kConfigFailed;
  }
  return kOk;
}

struct CompareArgs {
  std::string base;
  std::string other;
};

int RunCompare(const CompareArgs& a) {
  reducto_report_set* raw = nullptr;
  Check(reducto_report_set_load_csv(a.base.c_str(), &raw));
  Reports base(raw);
  Check(reducto_report_set_load_csv(a.other.c_str(), &raw));
  Reports other(raw);
  char* csv = nullptr;
  Check(reducto_compare(base.get(), other.get(), &csv));
  std::cout << Take(csv);
  return kOk;
}

void AddCaps(CLI::App* cmd, reducto_caps* caps) {
  reducto_caps_default(caps);
  cmd->add_option("--max-candidates", caps->max_candidates, "Candidate cap")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-nte", caps->max_nte, "Test execution cap")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-seconds", caps->max_seconds, "Wall-clock cap")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slice, reduce, localize and repair SLANG bug bundles"};
  app.require_subcommand(1);

  SliceArgs slice;
  auto* slice_cmd = app.add_subcommand("slice", "Observation-based slice of a bundle");
  slice_cmd->add_option("bundle", slice.bundle, "Bundle directory")->required();
  slice_cmd->add_option("--delta", slice.delta, "Largest deletion window")
      ->check(CLI::PositiveNumber);
  slice_cmd->add_option("--max-passes", slice.max_passes, "Pass cap")
      ->check(CLI::PositiveNumber);
  slice_cmd->add_option("--out", slice.out, "Output directory");

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce-tests", "Reduce a bundle's suite to a slice");
  reduce_cmd->add_option("bundle", reduce.bundle, "Bundle directory")->required();
  reduce_cmd->add_option("--slice", reduce.slice, "Slice directory")->required();
  reduce_cmd->add_option("--out", reduce.out, "Output directory (default: the slice)");

  LocalizeArgs localize;
  auto* localize_cmd = app.add_subcommand("localize", "Write a suspicious-line list");
  localize_cmd->add_option("bundle", localize.bundle, "Bundle directory")->required();
  localize_cmd->add_option("--slice", localize.slice, "Slice directory");
  localize_cmd->add_option("--list", localize.list, "List provenance")
      ->check(CLI::IsMember({"L", "LP", "LR"}));
  localize_cmd->add_option("--out", localize.out, "Output directory");

  RepairArgs repair;
  auto* repair_cmd = app.add_subcommand("repair", "Repair a bundle under one configuration");
  repair_cmd->add_option("bundle", repair.bundle, "Bundle directory")->required();
  repair_cmd->add_option("--config", repair.config, "Configuration, e.g. Ps-Ts-LP")
      ->required();
  repair_cmd->add_option("--out", repair.out, "Output directory");
  AddCaps(repair_cmd, &repair.caps);

  ExperimentArgs experiment;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Run the configuration lattice over a corpus");
  experiment_cmd->add_option("corpus", experiment.corpus, "Corpus directory")->required();
  experiment_cmd->add_option("--configs", experiment.configs, "all or comma-separated names");
  experiment_cmd->add_option("--out", experiment.out, "Report file (default: stdout)");
  experiment_cmd->add_option("--format", experiment.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  AddCaps(experiment_cmd, &experiment.caps);

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Reductions of one report against another");
  compare_cmd->add_option("base", compare.base, "Baseline report CSV")->required();
  compare_cmd->add_option("other", compare.other, "Report CSV to compare")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kCorpusError;
  }

  try {
    if (*slice_cmd) return RunSlice(slice);
    if (*reduce_cmd) return RunReduce(reduce);
    if (*localize_cmd) return RunLocalize(localize);
    if (*repair_cmd) return RunRepair(repair);
    if (*experiment_cmd) return RunExperiment(experiment);
    if (*compare_cmd) return RunCompare(compare);
  } catch (const Exit& e) {
    return e.code;
  }
  return kCorpusError;
}
