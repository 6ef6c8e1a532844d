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

/* Checks that the header compiles as C and the library links from C. */

#include <stdio.h>
#include <string.h>

#include "reducto/reducto.h"

int main(int argc, char** argv) {
  reducto_bundle* bundle = NULL;
  char* json = NULL;
  reducto_status status;
  if (argc != 2) return 2;
  status = reducto_bundle_open(argv[1], &bundle);
  if (status != REDUCTO_OK) {
    fprintf(stderr, "%s: %s\n", reducto_status_name(status), reducto_last_error());
    return 1;
  }
  status = reducto_localize(bundle, NULL, "L", &json);
  if (status != REDUCTO_OK || strstr(json, "\"rank\"") == NULL) {
    reducto_bundle_free(bundle);
    return 1;
  }
  printf("%s %zu tests\n", reducto_bundle_name(bundle), reducto_bundle_test_count(bundle));
  reducto_string_free(json);
  reducto_bundle_free(bundle);
  return 0;
}
