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

#include "src/json_codec.h"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#include "reducto/error.h"

namespace reducto {

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "malformed value literal: " + what);
}

}  // namespace

nlohmann::json ValueToJson(const Value& value) {
  switch (value.type()) {
    case Value::Type::kInt:
      return {{"int", value.as_int()}};
    case Value::Type::kFloat: {
      char buf[24];
      std::snprintf(buf, sizeof buf, "0x%016" PRIx64, FloatBits(value.as_float()));
      return {{"float", buf}};
    }
    case Value::Type::kBool:
      return {{"bool", value.as_bool()}};
    case Value::Type::kStr:
      return {{"str", value.as_str()}};
    case Value::Type::kArray: {
      nlohmann::json elements = nlohmann::json::array();
      for (const auto& e : value.as_array()) elements.push_back(ValueToJson(e));
      return {{"array", std::move(elements)}};
    }
  }
  return nullptr;
}

Value ValueFromJson(const nlohmann::json& json) {
  if (!json.is_object() || json.size() != 1) Malformed(json.dump());
  auto it = json.begin();
  const std::string& tag = it.key();
  const nlohmann::json& payload = it.value();
  if (tag == "int") {
    if (!payload.is_number_integer()) Malformed(json.dump());
    return Value::Int(payload.get<int64_t>());
  }
  if (tag == "float") {
    if (!payload.is_string()) Malformed(json.dump());
    const std::string& s = payload.get_ref<const std::string&>();
    if (s.size() < 3 || s.size() > 18 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
      Malformed(json.dump());
    }
    char* end = nullptr;
    uint64_t bits = std::strtoull(s.c_str() + 2, &end, 16);
    if (*end != '\0') Malformed(json.dump());
    return Value::Float(FloatFromBits(bits));
  }
  if (tag == "bool") {
    if (!payload.is_boolean()) Malformed(json.dump());
    return Value::Bool(payload.get<bool>());
  }
  if (tag == "str") {
    if (!payload.is_string()) Malformed(json.dump());
    return Value::Str(payload.get<std::string>());
  }
  if (tag == "array") {
    if (!payload.is_array()) Malformed(json.dump());
    Value::Array elements;
    for (const auto& e : payload) elements.push_back(ValueFromJson(e));
    return Value::MakeArray(std::move(elements));
  }
  Malformed(json.dump());
}

nlohmann::json TestCaseToJson(const TestCase& test) {
  nlohmann::json args = nlohmann::json::array();
  for (const auto& a : test.call.args) args.push_back(ValueToJson(a));
  nlohmann::json expect;
  if (const auto* v = std::get_if<ExpectValue>(&test.expectation)) {
    expect = {{"value", ValueToJson(v->value)}};
  } else if (const auto* e = std::get_if<ExpectError>(&test.expectation)) {
    expect = {{"error", std::string(ErrorKindName(e->kind))}};
  } else {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : std::get<ExpectOutput>(test.expectation).values) {
      values.push_back(ValueToJson(v));
    }
    expect = {{"output", std::move(values)}};
  }
  nlohmann::json out;
  out["id"] = test.id;
  out["call"] = {{"fn", test.call.function}, {"args", std::move(args)}};
  out["expect"] = std::move(expect);
  return out;
}

TestCase TestCaseFromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("id") || !json["id"].is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "test without a string id");
  }
  TestCase test;
  test.id = json["id"].get<std::string>();
  auto bad = [&test](const std::string& what) {
    return Error(ErrorCode::kInvalidArgument, "test '" + test.id + "': " + what);
  };
  if (!json.contains("call") || !json["call"].is_object()) throw bad("missing call");
  const auto& call = json["call"];
  if (!call.contains("fn") || !call["fn"].is_string()) throw bad("missing call.fn");
  test.call.function = call["fn"].get<std::string>();
  if (call.contains("args")) {
    if (!call["args"].is_array()) throw bad("call.args must be an array");
    for (const auto& a : call["args"]) test.call.args.push_back(ValueFromJson(a));
  }
  if (!json.contains("expect")) throw bad("missing expect");
  const auto& expect = json["expect"];
  if (expect.is_array() || (expect.is_object() && expect.size() > 1) ||
      json.contains("expects")) {
    throw Error(ErrorCode::kMultiAssertTest,
                "test '" + test.id +
                    "' carries more than one expectation; split it into "
                    "single-expectation tests");
  }
  if (!expect.is_object() || expect.empty()) throw bad("malformed expect");
  if (expect.contains("value")) {
    test.expectation = ExpectValue{ValueFromJson(expect["value"])};
  } else if (expect.contains("error")) {
    if (!expect["error"].is_string()) throw bad("expect.error must be a string");
    auto kind = ErrorKindFromName(expect["error"].get<std::string>());
    if (!kind) throw bad("unknown error kind " + expect["error"].dump());
    test.expectation = ExpectError{*kind};
  } else if (expect.contains("output")) {
    if (!expect["output"].is_array()) throw bad("expect.output must be an array");
    ExpectOutput out;
    for (const auto& v : expect["output"]) out.values.push_back(ValueFromJson(v));
    test.expectation = std::move(out);
  } else {
    throw bad("unknown expectation " + expect.dump());
  }
  return test;
}

nlohmann::json ObservedToJson(const Observed& observed) {
  if (const auto* v = std::get_if<Value>(&observed)) return ValueToJson(*v);
  if (const auto* k = std::get_if<ErrorKind>(&observed)) {
    return {{"error", std::string(ErrorKindName(*k))}};
  }
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : std::get<std::vector<Value>>(observed)) {
    values.push_back(ValueToJson(v));
  }
  return {{"output", std::move(values)}};
}

}  // namespace reducto
