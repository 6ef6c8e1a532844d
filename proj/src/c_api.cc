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

#include "reducto/reducto.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "reducto/error.h"
#include "reducto/experiment.h"

struct reducto_bundle {
  reducto::BugBundle bundle;
  reducto::SuiteResult on_original;
};

struct reducto_slice {
  reducto::SliceResult result;
};

struct reducto_report_set {
  std::vector<reducto::RepairReport> reports;
};

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

thread_local std::string last_error;

reducto_status StatusOf(reducto::ErrorCode code) {
  switch (code) {
    case reducto::ErrorCode::kInvalidArgument:
      return REDUCTO_INVALID_ARGUMENT;
    case reducto::ErrorCode::kIo:
      return REDUCTO_IO;
    case reducto::ErrorCode::kManifest:
      return REDUCTO_MANIFEST;
    case reducto::ErrorCode::kNoFailingTests:
      return REDUCTO_NO_FAILING_TESTS;
    case reducto::ErrorCode::kMultiAssertTest:
      return REDUCTO_MULTI_ASSERT_TEST;
    case reducto::ErrorCode::kInvalidSlice:
      return REDUCTO_INVALID_SLICE;
    case reducto::ErrorCode::kNotViable:
      return REDUCTO_NOT_VIABLE;
    case reducto::ErrorCode::kUnmappableEdit:
      return REDUCTO_UNMAPPABLE_EDIT;
  }
  return REDUCTO_INTERNAL;
}

reducto_status Fail(reducto_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into a status and the last error.
template <typename F>
reducto_status Guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const reducto::Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const json::exception& e) {
    return Fail(REDUCTO_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return Fail(REDUCTO_INTERNAL, e.what());
  } catch (...) {
    return Fail(REDUCTO_INTERNAL, "unknown failure");
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw reducto::Error(reducto::ErrorCode::kIo, "cannot write " + path.string());
  }
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw reducto::Error(reducto::ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw reducto::Error(reducto::ErrorCode::kIo, "cannot create " + dir.string());
}

reducto::ExperimentSettings Settings(const reducto_caps* caps) {
  reducto::ExperimentSettings settings;
  if (caps != nullptr) {
    settings.caps.max_candidates = caps->max_candidates;
    settings.caps.max_nte = caps->max_nte;
    settings.caps.max_seconds = caps->max_seconds;
  }
  return settings;
}

std::vector<reducto::RepairConfig> ParseConfigs(const std::string& names) {
  if (names == "all") return reducto::ViableConfigs();
  std::vector<reducto::RepairConfig> out;
  std::istringstream in(names);
  std::string name;
  while (std::getline(in, name, ',')) {
    auto config = reducto::ConfigFromName(name);
    if (!config) {
      throw reducto::Error(reducto::ErrorCode::kInvalidArgument,
                           "unknown configuration '" + name + "'");
    }
    if (!reducto::IsViable(*config)) {
      throw reducto::Error(reducto::ErrorCode::kNotViable,
                           name + " is not a viable configuration");
    }
    out.push_back(*config);
  }
  if (out.empty()) {
    throw reducto::Error(reducto::ErrorCode::kInvalidArgument, "no configurations given");
  }
  return out;
}

template <typename T>
json JsonOpt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string FormatOpt(const std::optional<double>& v) {
  return v ? reducto::FormatPercent(*v) : "";
}

}  // namespace

extern "C" {

const char* reducto_status_name(reducto_status status) {
  switch (status) {
    case REDUCTO_OK:
      return "OK";
    case REDUCTO_INVALID_ARGUMENT:
      return "InvalidArgument";
    case REDUCTO_IO:
      return "Io";
    case REDUCTO_MANIFEST:
      return "ManifestError";
    case REDUCTO_NO_FAILING_TESTS:
      return "NoFailingTests";
    case REDUCTO_MULTI_ASSERT_TEST:
      return "MultiAssertTest";
    case REDUCTO_INVALID_SLICE:
      return "InvalidSlice";
    case REDUCTO_NOT_VIABLE:
      return "NotViable";
    case REDUCTO_UNMAPPABLE_EDIT:
      return "UnmappableEdit";
    case REDUCTO_INTERNAL:
      return "Internal";
  }
  return "Unknown";
}

const char* reducto_last_error(void) { return last_error.c_str(); }

void reducto_string_free(char* s) { std::free(s); }

void reducto_caps_default(reducto_caps* caps) {
  if (caps == nullptr) return;
  reducto::RepairCaps defaults;
  caps->max_candidates = defaults.max_candidates;
  caps->max_nte = defaults.max_nte;
  caps->max_seconds = defaults.max_seconds;
}

reducto_status reducto_bundle_open(const char* dir, reducto_bundle** out) {
  if (dir == nullptr || out == nullptr) return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  return Guarded([&] {
    auto handle = std::make_unique<reducto_bundle>();
    handle->bundle = reducto::LoadBundle(dir);
    handle->on_original = reducto::RunSuite(handle->bundle.program, handle->bundle.tests);
    *out = handle.release();
    return REDUCTO_OK;
  });
}

void reducto_bundle_free(reducto_bundle* bundle) { delete bundle; }

const char* reducto_bundle_name(const reducto_bundle* bundle) {
  return bundle == nullptr ? "" : bundle->bundle.name.c_str();
}

size_t reducto_bundle_test_count(const reducto_bundle* bundle) {
  return bundle == nullptr ? 0 : bundle->bundle.tests.size();
}

size_t reducto_bundle_failing_count(const reducto_bundle* bundle) {
  return bundle == nullptr ? 0 : bundle->on_original.failing_ids.size();
}

reducto_status reducto_slice_compute(const reducto_bundle* bundle, int delta, int max_passes,
                                     reducto_slice** out) {
  if (bundle == nullptr || out == nullptr) return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  if (delta < 0 || max_passes < 0) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "delta and max_passes must not be negative");
  }
  return Guarded([&] {
    reducto::SliceSettings settings;
    if (delta > 0) settings.delta = delta;
    if (max_passes > 0) settings.max_passes = max_passes;
    const reducto::BugBundle& b = bundle->bundle;
    reducto::CriterionWithBaseline cb = reducto::BuildCriterion(b.program, b.tests);
    auto handle = std::make_unique<reducto_slice>();
    handle->result = reducto::OrbsSlice(b.program, cb.criterion, cb.baseline, settings);
    *out = handle.release();
    return REDUCTO_OK;
  });
}

reducto_status reducto_slice_load(const reducto_bundle* bundle, const char* dir,
                                  reducto_slice** out) {
  if (bundle == nullptr || dir == nullptr || out == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  return Guarded([&] {
    fs::path root(dir);
    reducto::SourceProgram slice = reducto::SourceProgram::ReadFile(root / "slice.sl");
    json log = json::parse(ReadText(root / "deletion_log.json"));
    std::vector<int> mapping;
    for (const auto& pair : log.at("mapping")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw reducto::Error(reducto::ErrorCode::kInvalidSlice,
                             "deletion_log mapping entries must be [slice, original] pairs");
      }
      if (pair[0].get<int>() != static_cast<int>(mapping.size()) + 1) {
        throw reducto::Error(reducto::ErrorCode::kInvalidSlice,
                             "deletion_log mapping is not in slice line order");
      }
      mapping.push_back(pair[1].get<int>());
    }
    auto handle = std::make_unique<reducto_slice>();
    handle->result = reducto::MakeSliceResult(bundle->bundle.program, slice, mapping);
    *out = handle.release();
    return REDUCTO_OK;
  });
}

reducto_status reducto_slice_write(const reducto_slice* slice, const char* dir) {
  if (slice == nullptr || dir == nullptr) return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  return Guarded([&] {
    fs::path root(dir);
    MakeDir(root);
    const reducto::SliceResult& r = slice->result;
    WriteText(root / "slice.sl", r.slice.ToText());
    json log;
    log["deleted"] = r.deleted;
    log["mapping"] = json::array();
    for (size_t k = 0; k < r.mapping.size(); ++k) {
      log["mapping"].push_back({static_cast<int>(k) + 1, r.mapping[k]});
    }
    log["fixpoint"] = r.fixpoint;
    log["passes"] = r.passes;
    WriteText(root / "deletion_log.json", log.dump(2) + "\n");
    json stats;
    stats["orig_sloc"] = r.stats.original_sloc;
    stats["slice_sloc"] = r.stats.slice_sloc;
    stats["percent"] = std::stod(reducto::FormatPercent(r.stats.percent));
    WriteText(root / "slice_stats.json", stats.dump(2) + "\n");
    return REDUCTO_OK;
  });
}

void reducto_slice_free(reducto_slice* slice) { delete slice; }

int reducto_slice_sloc(const reducto_slice* slice) {
  return slice == nullptr ? 0 : slice->result.stats.slice_sloc;
}

int reducto_slice_fixpoint(const reducto_slice* slice) {
  return slice != nullptr && slice->result.fixpoint ? 1 : 0;
}

reducto_status reducto_reduce_tests(const reducto_bundle* bundle, const reducto_slice* slice,
                                    const char* dir) {
  if (bundle == nullptr || slice == nullptr || dir == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  return Guarded([&] {
    const reducto::BugBundle& b = bundle->bundle;
    reducto::ReducedSuite reduced = reducto::ReduceSuite(
        b.program, slice->result, b.tests, bundle->on_original, reducto::kDefaultStepBudget);
    fs::path root(dir);
    MakeDir(root);
    WriteText(root / "tests_reduced.json", reducto::TestSuiteToJson(reduced.kept));
    WriteText(root / "reduction_log.json", reducto::ReductionLogToJson(reduced));
    return REDUCTO_OK;
  });
}

reducto_status reducto_localize(const reducto_bundle* bundle, const reducto_slice* slice,
                                const char* list, char** json_out) {
  if (bundle == nullptr || list == nullptr || json_out == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  auto provenance = reducto::ListProvenanceFromName(list);
  if (!provenance) return Fail(REDUCTO_INVALID_ARGUMENT, std::string("unknown list ") + list);
  if (*provenance != reducto::ListProvenance::kL && slice == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, std::string(list) + " needs a slice");
  }
  return Guarded([&] {
    const reducto::BugBundle& b = bundle->bundle;
    reducto::SuspiciousList l = reducto::Rank(reducto::OchiaiScores(
        reducto::SpectrumFromOutcomes(b.program, bundle->on_original)));
    reducto::SuspiciousList result = l;
    if (*provenance == reducto::ListProvenance::kLP) {
      result = reducto::PruneList(l, slice->result.mapping);
    } else if (*provenance == reducto::ListProvenance::kLR) {
      reducto::ReducedSuite reduced =
          reducto::ReduceSuite(b.program, slice->result, b.tests, bundle->on_original,
                               reducto::kDefaultStepBudget);
      result = reducto::RegenerateList(slice->result.slice, reduced.kept, slice->result.mapping);
    }
    *json_out = Dup(reducto::SuspiciousListToJson(result));
    return REDUCTO_OK;
  });
}

reducto_status reducto_repair(const reducto_bundle* bundle, const char* config,
                              const reducto_caps* caps, char** json_out) {
  if (bundle == nullptr || config == nullptr || json_out == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  return Guarded([&] {
    auto configs = ParseConfigs(config);
    if (configs.size() != 1) {
      throw reducto::Error(reducto::ErrorCode::kInvalidArgument, "repair takes one configuration");
    }
    reducto::BundleRunner runner(bundle->bundle, Settings(caps));
    reducto::RepairReport r = runner.Run(configs[0]);
    json doc;
    doc["bundle"] = r.bundle;
    doc["config"] = r.config;
    doc["patched"] = r.patched;
    if (r.patched) {
      doc["patch"] = {{"line", *r.patch_line},
                      {"template", *r.patch_template},
                      {"new_text", *r.patch_text}};
    } else {
      doc["patch"] = nullptr;
    }
    doc["npc"] = r.npc;
    doc["nte"] = r.nte;
    doc["rt_ms"] = r.rt_ms;
    doc["cost_proxy"] = r.cost_proxy;
    doc["br"] = JsonOpt(r.br);
    doc["stop_reason"] = r.stop_reason;
    doc["transferred"] = JsonOpt(r.transferred);
    doc["same_location"] = JsonOpt(r.same_location);
    doc["matches_ground_truth"] = r.matches_ground_truth;
    doc["failed"] = r.failed;
    *json_out = Dup(doc.dump(2) + "\n");
    return REDUCTO_OK;
  });
}

reducto_status reducto_experiment_run(const char* corpus_dir, const char* configs,
                                      const reducto_caps* caps, reducto_report_set** out) {
  if (corpus_dir == nullptr || out == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  return Guarded([&] {
    auto selected = ParseConfigs(configs == nullptr ? "all" : configs);
    std::vector<reducto::BugBundle> bundles;
    for (const auto& dir : reducto::ListBundles(corpus_dir)) {
      bundles.push_back(reducto::LoadBundle(dir));
    }
    if (bundles.empty()) {
      throw reducto::Error(reducto::ErrorCode::kManifest,
                           std::string(corpus_dir) + " holds no bundles");
    }
    auto handle = std::make_unique<reducto_report_set>();
    handle->reports = reducto::RunLattice(bundles, Settings(caps), selected);
    *out = handle.release();
    return REDUCTO_OK;
  });
}

reducto_status reducto_report_set_load_csv(const char* path, reducto_report_set** out) {
  if (path == nullptr || out == nullptr) return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  return Guarded([&] {
    auto handle = std::make_unique<reducto_report_set>();
    handle->reports = reducto::ReportsFromCsv(ReadText(path));
    *out = handle.release();
    return REDUCTO_OK;
  });
}

void reducto_report_set_free(reducto_report_set* set) { delete set; }

size_t reducto_report_set_size(const reducto_report_set* set) {
  return set == nullptr ? 0 : set->reports.size();
}

size_t reducto_report_set_failures(const reducto_report_set* set) {
  if (set == nullptr) return 0;
  size_t n = 0;
  for (const auto& r : set->reports) n += r.failed;
  return n;
}

reducto_status reducto_report_set_csv(const reducto_report_set* set, char** csv) {
  if (set == nullptr || csv == nullptr) return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  return Guarded([&] {
    *csv = Dup(reducto::ReportsToCsv(set->reports));
    return REDUCTO_OK;
  });
}

reducto_status reducto_report_set_json(const reducto_report_set* set, char** json_out) {
  if (set == nullptr || json_out == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  return Guarded([&] {
    *json_out = Dup(reducto::ReportsToJson(set->reports));
    return REDUCTO_OK;
  });
}

reducto_status reducto_compare(const reducto_report_set* base, const reducto_report_set* other,
                               char** csv) {
  if (base == nullptr || other == nullptr || csv == nullptr) {
    return Fail(REDUCTO_INVALID_ARGUMENT, "null argument");
  }
  return Guarded([&] {
    std::map<std::string, std::vector<const reducto::RepairReport*>> by_bundle;
    for (const auto& r : base->reports) by_bundle[r.bundle].push_back(&r);
    std::string text =
        "bundle,base_config,other_config,rt_reduction,nte_reduction,npc_reduction,br_delta,"
        "same_location\n";
    for (const auto& r : other->reports) {
      auto it = by_bundle.find(r.bundle);
      if (it == by_bundle.end()) {
        throw reducto::Error(reducto::ErrorCode::kInvalidArgument,
                             "bundle " + r.bundle + " is missing from the base reports");
      }
      const reducto::RepairReport* match = nullptr;
      if (it->second.size() == 1) {
        match = it->second.front();
      } else {
        for (const auto* b : it->second) {
          if (b->config == r.config) match = b;
        }
      }
      if (match == nullptr) {
        throw reducto::Error(reducto::ErrorCode::kInvalidArgument,
                             "no base report for " + r.bundle + " " + r.config);
      }
      reducto::Comparison c = reducto::Compare(*match, r);
      text += c.bundle + "," + c.base_config + "," + c.other_config + "," +
              FormatOpt(c.rt_reduction) + "," + FormatOpt(c.nte_reduction) + "," +
              FormatOpt(c.npc_reduction) + "," +
              (c.br_delta ? std::to_string(*c.br_delta) : "") + "," +
              (c.same_location ? (*c.same_location ? "true" : "false") : "") + "\n";
    }
    *csv = Dup(text);
    return REDUCTO_OK;
  });
}

}  // extern "C"
