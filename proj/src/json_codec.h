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

#ifndef REDUCTO_SRC_JSON_CODEC_H_
#define REDUCTO_SRC_JSON_CODEC_H_

#include "json.hpp"
#include "reducto/test_harness.h"
#include "reducto/value.h"

namespace reducto {

// Tagged value literals: {"int":3}, {"float":"0x..."} (binary64 bit
// pattern), {"bool":true}, {"str":"..."}, {"array":[...]}.
nlohmann::json ValueToJson(const Value& value);
// Throws Error(kInvalidArgument) on malformed literals.
Value ValueFromJson(const nlohmann::json& json);

nlohmann::json TestCaseToJson(const TestCase& test);
TestCase TestCaseFromJson(const nlohmann::json& json);

nlohmann::json ObservedToJson(const Observed& observed);

}  // namespace reducto

#endif  // REDUCTO_SRC_JSON_CODEC_H_
