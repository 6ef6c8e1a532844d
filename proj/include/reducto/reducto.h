/*
 * Copyright 2026 The Reducto Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the reducto shared library.
 *
 * Every fallible call returns a reducto_status. On failure the calling
 * thread's last error message describes the problem and out-parameters are
 * left untouched. Strings returned through char** are owned by the caller
 * and released with reducto_string_free. Handles are released with their
 * matching _free function, which accepts NULL.
 */

#ifndef REDUCTO_REDUCTO_H_
#define REDUCTO_REDUCTO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define REDUCTO_API __declspec(dllexport)
#else
#define REDUCTO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum reducto_status {
  REDUCTO_OK = 0,
  REDUCTO_INVALID_ARGUMENT = 1,
  REDUCTO_IO = 2,
  REDUCTO_MANIFEST = 3,
  REDUCTO_NO_FAILING_TESTS = 4,
  REDUCTO_MULTI_ASSERT_TEST = 5,
  REDUCTO_INVALID_SLICE = 6,
  REDUCTO_NOT_VIABLE = 7,
  REDUCTO_UNMAPPABLE_EDIT = 8,
  REDUCTO_INTERNAL = 100
} reducto_status;

typedef struct reducto_bundle reducto_bundle;
typedef struct reducto_slice reducto_slice;
typedef struct reducto_report_set reducto_report_set;

typedef struct reducto_caps {
  int64_t max_candidates;
  int64_t max_nte;
  double max_seconds;
} reducto_caps;

REDUCTO_API const char* reducto_status_name(reducto_status status);

/* Message of the last failed call on this thread, "" when none. */
REDUCTO_API const char* reducto_last_error(void);

REDUCTO_API void reducto_string_free(char* s);

/* Default repair caps: 2000 candidates, 500000 test executions, 120 s. */
REDUCTO_API void reducto_caps_default(reducto_caps* caps);

/* Bundles. */

REDUCTO_API reducto_status reducto_bundle_open(const char* dir, reducto_bundle** out);
REDUCTO_API void reducto_bundle_free(reducto_bundle* bundle);
REDUCTO_API const char* reducto_bundle_name(const reducto_bundle* bundle);
REDUCTO_API size_t reducto_bundle_test_count(const reducto_bundle* bundle);
REDUCTO_API size_t reducto_bundle_failing_count(const reducto_bundle* bundle);

/* Slices. delta and max_passes of 0 select the defaults (3 and 50). */

REDUCTO_API reducto_status reducto_slice_compute(const reducto_bundle* bundle, int delta,
                                                 int max_passes, reducto_slice** out);

/* Reads a directory written by reducto_slice_write. */
REDUCTO_API reducto_status reducto_slice_load(const reducto_bundle* bundle, const char* dir,
                                              reducto_slice** out);

/* Writes slice.sl, deletion_log.json and slice_stats.json into dir. */
REDUCTO_API reducto_status reducto_slice_write(const reducto_slice* slice, const char* dir);

REDUCTO_API void reducto_slice_free(reducto_slice* slice);
REDUCTO_API int reducto_slice_sloc(const reducto_slice* slice);
REDUCTO_API int reducto_slice_fixpoint(const reducto_slice* slice);

/* Writes tests_reduced.json and reduction_log.json into dir. */
REDUCTO_API reducto_status reducto_reduce_tests(const reducto_bundle* bundle,
                                                const reducto_slice* slice, const char* dir);

/* Suspicious list as JSON. list is "L", "LP" or "LR"; LP and LR need a
 * slice. */
REDUCTO_API reducto_status reducto_localize(const reducto_bundle* bundle,
                                            const reducto_slice* slice, const char* list,
                                            char** json);

/* Runs one configuration (e.g. "Ps-Ts-LP") and returns the repair result as
 * JSON. caps may be NULL for the defaults. */
REDUCTO_API reducto_status reducto_repair(const reducto_bundle* bundle, const char* config,
                                          const reducto_caps* caps, char** json);

/* Report sets. */

/* Runs configurations over every bundle under corpus_dir. configs is "all"
 * or a comma-separated list of names; caps may be NULL. */
REDUCTO_API reducto_status reducto_experiment_run(const char* corpus_dir, const char* configs,
                                                  const reducto_caps* caps,
                                                  reducto_report_set** out);

REDUCTO_API reducto_status reducto_report_set_load_csv(const char* path,
                                                       reducto_report_set** out);
REDUCTO_API void reducto_report_set_free(reducto_report_set* set);
REDUCTO_API size_t reducto_report_set_size(const reducto_report_set* set);

/* Reports whose configuration failed in a pipeline stage. */
REDUCTO_API size_t reducto_report_set_failures(const reducto_report_set* set);

REDUCTO_API reducto_status reducto_report_set_csv(const reducto_report_set* set, char** csv);
REDUCTO_API reducto_status reducto_report_set_json(const reducto_report_set* set, char** json);

/* Pairs each report of other with the report of base for the same bundle
 * (and configuration, when base holds several for that bundle) and returns
 * the reductions as CSV. */
REDUCTO_API reducto_status reducto_compare(const reducto_report_set* base,
                                           const reducto_report_set* other, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* REDUCTO_REDUCTO_H_ */
