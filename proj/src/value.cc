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

#include "reducto/value.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <utility>

namespace reducto {

namespace {

constexpr std::array<std::pair<ErrorKind, std::string_view>, 5> kErrorNames{{
    {ErrorKind::kDivByZero, "DivByZero"},
    {ErrorKind::kIndexOutOfBounds, "IndexOutOfBounds"},
    {ErrorKind::kUndefinedVariable, "UndefinedVariable"},
    {ErrorKind::kTypeError, "TypeError"},
    {ErrorKind::kArityMismatch, "ArityMismatch"},
}};

void AppendQuoted(std::ostringstream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out << "\\\"";
        break;
      case '\\':
        out << "\\\\";
        break;
      case '\n':
        out << "\\n";
        break;
      case '\t':
        out << "\\t";
        break;
      default:
        out << c;
    }
  }
  out << '"';
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  for (const auto& [k, name] : kErrorNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

std::optional<ErrorKind> ErrorKindFromName(std::string_view name) {
  for (const auto& [k, n] : kErrorNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view TypeName(Value::Type type) {
  switch (type) {
    case Value::Type::kInt:
      return "int";
    case Value::Type::kFloat:
      return "float";
    case Value::Type::kBool:
      return "bool";
    case Value::Type::kStr:
      return "str";
    case Value::Type::kArray:
      return "array";
  }
  return "?";
}

uint64_t FloatBits(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return bits;
}

double FloatFromBits(uint64_t bits) {
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

Value::Array& Value::mutable_array() {
  auto& ptr = std::get<4>(data_);
  if (ptr.use_count() > 1) ptr = std::make_shared<Array>(*ptr);
  return *ptr;
}

bool operator==(const Value& a, const Value& b) {
  if (a.type() != b.type()) return false;
  switch (a.type()) {
    case Value::Type::kInt:
      return a.as_int() == b.as_int();
    case Value::Type::kFloat:
      return FloatBits(a.as_float()) == FloatBits(b.as_float());
    case Value::Type::kBool:
      return a.as_bool() == b.as_bool();
    case Value::Type::kStr:
      return a.as_str() == b.as_str();
    case Value::Type::kArray: {
      const auto& pa = std::get<4>(a.data_);
      const auto& pb = std::get<4>(b.data_);
      return pa == pb || *pa == *pb;
    }
  }
  return false;
}

std::string Value::ToString() const {
  std::ostringstream out;
  switch (type()) {
    case Type::kInt:
      out << as_int();
      break;
    case Type::kFloat: {
      double v = as_float();
      if (std::isnan(v)) {
        out << "nan";
      } else if (std::isinf(v)) {
        out << (v < 0 ? "-inf" : "inf");
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
      }
      break;
    }
    case Type::kBool:
      out << (as_bool() ? "true" : "false");
      break;
    case Type::kStr:
      AppendQuoted(out, as_str());
      break;
    case Type::kArray: {
      out << '[';
      bool first = true;
      for (const auto& e : as_array()) {
        if (!first) out << ", ";
        first = false;
        out << e.ToString();
      }
      out << ']';
      break;
    }
  }
  return out.str();
}

}  // namespace reducto
