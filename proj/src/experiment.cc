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
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "reducto/error.h"

namespace reducto {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

[[noreturn]] void BadManifest(const fs::path& dir, const std::string& what) {
  throw Error(ErrorCode::kManifest, dir.string() + ": " + what);
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

const char* kCsvColumns[] = {"bundle",     "config",        "sloc_p",     "sloc_ps",
                             "slice_pct",  "tss_t",         "tss_ts",     "br",
                             "npc",        "nte",           "rt_ms",      "cost_proxy",
                             "patched",    "patch_line",    "same_location",
                             "transferred", "stop_reason"};

std::string Bool(bool b) { return b ? "true" : "false"; }

template <typename T>
std::string Opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) {
    return Bool(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string Millis(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

// Values in CSV column order.
std::vector<std::string> CsvFields(const RepairReport& r) {
  return {r.bundle,
          r.config,
          std::to_string(r.sloc_p),
          Opt(r.sloc_ps),
          r.slice_pct ? FormatPercent(*r.slice_pct) : "",
          std::to_string(r.tss_t),
          Opt(r.tss_ts),
          Opt(r.br),
          std::to_string(r.npc),
          std::to_string(r.nte),
          Millis(r.rt_ms),
          std::to_string(r.cost_proxy),
          Bool(r.patched),
          Opt(r.patch_line),
          Opt(r.same_location),
          Opt(r.transferred),
          r.stop_reason};
}

template <typename T>
nlohmann::json JsonOpt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

SuspiciousList ToSliceLines(const SuspiciousList& list, std::span<const int> mapping) {
  std::map<int, int> inverse;
  for (size_t k = 0; k < mapping.size(); ++k) inverse[mapping[k]] = static_cast<int>(k) + 1;
  SuspiciousList out;
  out.provenance = list.provenance;
  for (const auto& e : list.entries) {
    auto it = inverse.find(e.line);
    if (it == inverse.end()) continue;
    out.entries.push_back({it->second, e.score, e.rank});
  }
  return out;
}

}  // namespace

BugBundle LoadBundle(const fs::path& dir) {
  fs::path manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) BadManifest(dir, "missing manifest.json");
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    BadManifest(dir, std::string("malformed manifest.json: ") + e.what());
  }
  if (!manifest.is_object()) BadManifest(dir, "manifest must be an object");
  for (const char* key : {"program", "tests"}) {
    if (!manifest.contains(key) || !manifest[key].is_string()) {
      BadManifest(dir, std::string("manifest needs a string \"") + key + "\"");
    }
  }
  BugBundle bundle;
  bundle.dir = dir;
  fs::path normal = fs::absolute(dir).lexically_normal();
  if (normal.filename().empty()) normal = normal.parent_path();
  bundle.name = manifest.contains("name") && manifest["name"].is_string()
                    ? manifest["name"].get<std::string>()
                    : normal.filename().string();
  if (bundle.name.find(',') != std::string::npos) BadManifest(dir, "bundle name has a comma");
  try {
    bundle.program = SourceProgram::ReadFile(dir / manifest["program"].get<std::string>());
    bundle.tests = LoadTestSuite(dir / manifest["tests"].get<std::string>());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMultiAssertTest) throw;
    BadManifest(dir, e.what());
  }
  if (manifest.contains("ground_truth") && !manifest["ground_truth"].is_null()) {
    const auto& gt = manifest["ground_truth"];
    if (!gt.is_object() || !gt.contains("bug_line") || !gt["bug_line"].is_number_integer()) {
      BadManifest(dir, "ground_truth needs an integer bug_line");
    }
    GroundTruth truth;
    truth.bug_line = gt["bug_line"].get<int>();
    if (gt.contains("patched_text")) {
      if (!gt["patched_text"].is_string()) BadManifest(dir, "patched_text must be a string");
      truth.patched_text = gt["patched_text"].get<std::string>();
    }
    if (gt.contains("kind")) {
      if (gt["kind"] != "replace" && gt["kind"] != "guard") {
        BadManifest(dir, "ground_truth kind must be \"replace\" or \"guard\"");
      }
      truth.guard = gt["kind"] == "guard";
    }
    if (truth.bug_line < 1 || truth.bug_line > bundle.program.size()) {
      BadManifest(dir, "ground_truth bug_line is outside the program");
    }
    bundle.ground_truth = truth;
  }
  if (RunSuite(bundle.program, bundle.tests).failing_ids.empty()) {
    throw Error(ErrorCode::kNoFailingTests,
                dir.string() + ": every test passes on the program");
  }
  return bundle;
}

std::vector<fs::path> ListBundles(const fs::path& corpus) {
  std::error_code ec;
  if (!fs::is_directory(corpus, ec)) {
    throw Error(ErrorCode::kManifest, corpus.string() + " is not a directory");
  }
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ConfigName(const RepairConfig& c) {
  return std::string(c.program == ProgramVariant::kP ? "P" : "Ps") + "-" +
         (c.suite == SuiteVariant::kT ? "T" : "Ts") + "-" +
         std::string(ListProvenanceName(c.list));
}

std::optional<RepairConfig> ConfigFromName(std::string_view name) {
  for (const auto& c : AllConfigs()) {
    if (ConfigName(c) == name) return c;
  }
  return std::nullopt;
}

bool IsViable(const RepairConfig& c) {
  return !(c.program == ProgramVariant::kPs &&
           (c.suite == SuiteVariant::kT || c.list == ListProvenance::kL));
}

std::vector<RepairConfig> AllConfigs() {
  std::vector<RepairConfig> out;
  for (auto p : {ProgramVariant::kP, ProgramVariant::kPs}) {
    for (auto t : {SuiteVariant::kT, SuiteVariant::kTs}) {
      for (auto l : {ListProvenance::kL, ListProvenance::kLR, ListProvenance::kLP}) {
        out.push_back({p, t, l});
      }
    }
  }
  return out;
}

const std::vector<RepairConfig>& ViableConfigs() {
  static const std::vector<RepairConfig> configs = [] {
    std::vector<RepairConfig> out;
    for (const auto& c : AllConfigs()) {
      if (IsViable(c)) out.push_back(c);
    }
    return out;
  }();
  return configs;
}

BundleArtifacts BuildArtifacts(const BugBundle& bundle, const ExperimentSettings& settings) {
  BundleArtifacts a;
  const SourceProgram& p = bundle.program;
  a.on_original = RunSuite(p, bundle.tests, settings.budget);
  a.sloc_p = CountSloc(p);
  Clock::time_point t0 = Clock::now();
  a.l = Rank(OchiaiScores(SpectrumFromOutcomes(p, a.on_original)));
  a.localize_ms = MillisSince(t0);
  try {
    t0 = Clock::now();
    CriterionWithBaseline cb = BuildCriterion(p, bundle.tests, settings.budget);
    SliceSettings slice_settings = settings.slice;
    slice_settings.budget = settings.budget;
    a.slice = OrbsSlice(p, cb.criterion, cb.baseline, slice_settings);
    a.slice_ms = MillisSince(t0);
    if (!a.slice->fixpoint) a.slice_error = "PassCapExceeded";

    t0 = Clock::now();
    a.reduced = ReduceSuite(p, *a.slice, bundle.tests, a.on_original, settings.budget);
    a.reduce_ms = MillisSince(t0);

    t0 = Clock::now();
    a.lp = PruneList(a.l, a.slice->mapping);
    try {
      a.lr = RegenerateList(a.slice->slice, a.reduced->kept, a.slice->mapping,
                            settings.budget);
    } catch (const Error& e) {
      a.lr_error = ErrorCodeName(e.code());
    }
    a.localize_ms += MillisSince(t0);
  } catch (const Error& e) {
    a.slice_error = ErrorCodeName(e.code());
    a.slice.reset();
    a.reduced.reset();
    a.lp.reset();
  }
  return a;
}

BundleRunner::BundleRunner(BugBundle bundle, ExperimentSettings settings)
    : bundle_(std::move(bundle)),
      settings_(settings),
      artifacts_(BuildArtifacts(bundle_, settings_)) {}

RepairReport BundleRunner::Run(const RepairConfig& config) {
  if (!IsViable(config)) {
    throw Error(ErrorCode::kNotViable, ConfigName(config) + " is not a viable configuration");
  }
  for (const auto& [c, report] : done_) {
    if (c == config) return report;
  }
  RepairConfig baseline{};
  if (!(config == baseline)) Run(baseline);
  RepairReport report = RunUncached(config);
  done_.emplace_back(config, report);
  return report;
}

std::optional<SourceProgram> BundleRunner::PatchedProgram(const RepairConfig& config) const {
  for (const auto& [c, program] : patched_) {
    if (c == config) return program;
  }
  return std::nullopt;
}

RepairReport BundleRunner::RunUncached(const RepairConfig& config) {
  const BundleArtifacts& a = artifacts_;
  RepairReport r;
  r.bundle = bundle_.name;
  r.config = ConfigName(config);
  r.sloc_p = a.sloc_p;
  r.tss_t = bundle_.tests.size();
  if (a.slice) {
    r.sloc_ps = a.slice->stats.slice_sloc;
    r.slice_pct = a.sloc_p ? 100.0 * *r.sloc_ps / a.sloc_p : 0.0;
  }
  if (a.reduced) r.tss_ts = a.reduced->kept.size();

  bool on_slice = config.program == ProgramVariant::kPs;
  bool needs_slice = on_slice || config.suite == SuiteVariant::kTs ||
                     config.list != ListProvenance::kL;
  auto fail = [&r](std::string why) {
    r.failed = true;
    r.stop_reason = std::move(why);
    return r;
  };
  if (needs_slice && !a.slice) return fail(*a.slice_error);
  if (on_slice && a.slice_error) return fail(*a.slice_error);
  if (config.list == ListProvenance::kLR && !a.lr) return fail(*a.lr_error);

  const SourceProgram& program = on_slice ? a.slice->slice : bundle_.program;
  const TestSuite& suite = config.suite == SuiteVariant::kTs ? a.reduced->kept : bundle_.tests;
  SuspiciousList list = config.list == ListProvenance::kL    ? a.l
                        : config.list == ListProvenance::kLP ? *a.lp
                                                             : *a.lr;
  if (on_slice) list = ToSliceLines(list, a.slice->mapping);

  RepairResult result;
  try {
    result = Repair(program, suite, list, settings_.caps, settings_.budget);
  } catch (const Error& e) {
    return fail(ErrorCodeName(e.code()));
  }
  r.npc = result.npc;
  r.nte = result.nte;
  r.rt_ms = result.rt_ms;
  r.cost_proxy = result.cost_proxy;
  r.stop_reason = std::string(StopReasonName(result.stop_reason));
  if (!result.patch) return r;

  PatchCandidate patch = *result.patch;
  if (on_slice) {
    try {
      patch = MapPatchToOriginal(patch, a.slice->mapping, bundle_.program);
    } catch (const Error& e) {
      return fail(ErrorCodeName(e.code()));
    }
  }
  r.patched = true;
  r.br = result.br;
  r.patch_line = patch.location;
  r.patch_template = patch.template_id;
  r.patch_text = patch.edit.text;
  r.transferred =
      RunSuite(patch.patched, bundle_.tests, settings_.budget).failing_ids.empty();
  patched_.emplace_back(config, patch.patched);

  RepairConfig baseline{};
  if (config == baseline) {
    r.same_location = true;
  } else {
    for (const auto& [c, base] : done_) {
      if (c == baseline && base.patch_line) r.same_location = *base.patch_line == patch.location;
    }
  }
  if (bundle_.ground_truth) {
    const GroundTruth& truth = *bundle_.ground_truth;
    EditKind kind = truth.guard ? EditKind::kInsertGuard : EditKind::kReplaceLine;
    r.matches_ground_truth = patch.edit.kind == kind && patch.location == truth.bug_line &&
                             Trim(patch.edit.text) == Trim(truth.patched_text);
  }
  return r;
}

std::vector<RepairReport> RunLattice(const std::vector<BugBundle>& bundles,
                                     const ExperimentSettings& settings,
                                     const std::vector<RepairConfig>& configs) {
  for (const auto& c : configs) {
    if (!IsViable(c)) {
      throw Error(ErrorCode::kNotViable, ConfigName(c) + " is not a viable configuration");
    }
  }
  std::vector<RepairReport> out;
  for (const auto& bundle : bundles) {
    BundleRunner runner(bundle, settings);
    for (const auto& c : configs) out.push_back(runner.Run(c));
  }
  return out;
}

std::string FormatPercent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", value);
  return buf;
}

std::string ReportsToCsv(const std::vector<RepairReport>& reports) {
  std::string out;
  for (size_t i = 0; i < std::size(kCsvColumns); ++i) {
    if (i) out += ",";
    out += kCsvColumns[i];
  }
  out += "\n";
  for (const auto& r : reports) {
    auto fields = CsvFields(r);
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ",";
      out += fields[i];
    }
    out += "\n";
  }
  return out;
}

std::string ReportsToJson(const std::vector<RepairReport>& reports) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json row;
    row["bundle"] = r.bundle;
    row["config"] = r.config;
    row["sloc_p"] = r.sloc_p;
    row["sloc_ps"] = JsonOpt(r.sloc_ps);
    row["slice_pct"] =
        r.slice_pct ? nlohmann::json(std::stod(FormatPercent(*r.slice_pct))) : nullptr;
    row["tss_t"] = r.tss_t;
    row["tss_ts"] = JsonOpt(r.tss_ts);
    row["br"] = JsonOpt(r.br);
    row["npc"] = r.npc;
    row["nte"] = r.nte;
    row["rt_ms"] = std::stod(Millis(r.rt_ms));
    row["cost_proxy"] = r.cost_proxy;
    row["patched"] = r.patched;
    row["patch_line"] = JsonOpt(r.patch_line);
    row["same_location"] = JsonOpt(r.same_location);
    row["transferred"] = JsonOpt(r.transferred);
    row["stop_reason"] = r.stop_reason;
    row["patch_template"] = JsonOpt(r.patch_template);
    row["patch_text"] = JsonOpt(r.patch_text);
    row["matches_ground_truth"] = r.matches_ground_truth;
    row["failed"] = r.failed;
    doc.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::vector<RepairReport> ReportsFromCsv(const std::string& text) {
  auto split = [](const std::string& row) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(row);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!row.empty() && row.back() == ',') fields.push_back("");
    return fields;
  };
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::kInvalidArgument, "report csv: " + what);
  };
  std::istringstream in(text);
  std::string row;
  if (!std::getline(in, row)) throw bad("empty document");
  if (!row.empty() && row.back() == '\r') row.pop_back();
  auto header = split(row);
  if (header != std::vector<std::string>(std::begin(kCsvColumns), std::end(kCsvColumns))) {
    throw bad("unexpected header");
  }
  auto int_of = [&bad](const std::string& s) -> int64_t {
    try {
      size_t used = 0;
      int64_t v = std::stoll(s, &used);
      if (used != s.size()) throw bad("not an integer: " + s);
      return v;
    } catch (const std::logic_error&) {
      throw bad("not an integer: " + s);
    }
  };
  auto double_of = [&bad](const std::string& s) {
    try {
      return std::stod(s);
    } catch (const std::logic_error&) {
      throw bad("not a number: " + s);
    }
  };
  auto opt_int = [&](const std::string& s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    return static_cast<int>(int_of(s));
  };
  auto bool_of = [&bad](const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw bad("not a boolean: " + s);
  };
  auto opt_bool = [&](const std::string& s) -> std::optional<bool> {
    if (s.empty()) return std::nullopt;
    return bool_of(s);
  };
  std::vector<RepairReport> out;
  while (std::getline(in, row)) {
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    auto f = split(row);
    if (f.size() != header.size()) throw bad("wrong field count in: " + row);
    RepairReport r;
    r.bundle = f[0];
    r.config = f[1];
    r.sloc_p = static_cast<int>(int_of(f[2]));
    r.sloc_ps = opt_int(f[3]);
    if (!f[4].empty()) r.slice_pct = double_of(f[4]);
    r.tss_t = static_cast<int>(int_of(f[5]));
    r.tss_ts = opt_int(f[6]);
    r.br = opt_int(f[7]);
    r.npc = int_of(f[8]);
    r.nte = int_of(f[9]);
    r.rt_ms = double_of(f[10]);
    r.cost_proxy = int_of(f[11]);
    r.patched = bool_of(f[12]);
    r.patch_line = opt_int(f[13]);
    r.same_location = opt_bool(f[14]);
    r.transferred = opt_bool(f[15]);
    r.stop_reason = f[16];
    r.failed = true;
    for (auto reason : {StopReason::kPatched, StopReason::kExhausted, StopReason::kMaxCandidates,
                        StopReason::kMaxNte, StopReason::kTimeout}) {
      if (r.stop_reason == StopReasonName(reason)) r.failed = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<double> PercentReduction(double base, double other) {
  if (base == 0.0) {
    if (other == 0.0) return 0.0;
    return std::nullopt;
  }
  return (base - other) / base * 100.0;
}

Comparison Compare(const RepairReport& base, const RepairReport& other) {
  if (base.bundle != other.bundle) {
    throw Error(ErrorCode::kInvalidArgument, "compared reports come from different bundles");
  }
  Comparison c;
  c.bundle = base.bundle;
  c.base_config = base.config;
  c.other_config = other.config;
  c.rt_reduction = PercentReduction(base.rt_ms, other.rt_ms);
  c.nte_reduction = PercentReduction(static_cast<double>(base.nte),
                                     static_cast<double>(other.nte));
  c.npc_reduction = PercentReduction(static_cast<double>(base.npc),
                                     static_cast<double>(other.npc));
  if (base.br && other.br) c.br_delta = *other.br - *base.br;
  if (base.patch_line && other.patch_line) c.same_location = *base.patch_line == *other.patch_line;
  return c;
}

}  // namespace reducto
