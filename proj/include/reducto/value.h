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

#ifndef REDUCTO_VALUE_H_
#define REDUCTO_VALUE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace reducto {

// Runtime error classes raised by the interpreter.
enum class ErrorKind {
  kDivByZero,
  kIndexOutOfBounds,
  kUndefinedVariable,
  kTypeError,
  kArityMismatch,
};

std::string_view ErrorKindName(ErrorKind kind);
std::optional<ErrorKind> ErrorKindFromName(std::string_view name);

// A SLANG runtime value. Arrays have value semantics and are shared
// copy-on-write, so copying a Value is cheap.
//
// Equality is structural and type-strict. Floats compare by bit pattern, so
// +Inf, -Inf and each NaN payload are distinct, comparable tokens and
// Int 1 != Float 1.0.
class Value {
 public:
  using Array = std::vector<Value>;

  enum class Type { kInt, kFloat, kBool, kStr, kArray };

  Value() : data_(int64_t{0}) {}

  static Value Int(int64_t v) { return Value(Data(std::in_place_index<0>, v)); }
  static Value Float(double v) {
    return Value(Data(std::in_place_index<1>, v));
  }
  static Value Bool(bool v) { return Value(Data(std::in_place_index<2>, v)); }
  static Value Str(std::string v) {
    return Value(Data(std::in_place_index<3>, std::move(v)));
  }
  static Value MakeArray(Array elements) {
    return Value(Data(std::in_place_index<4>,
                      std::make_shared<Array>(std::move(elements))));
  }

  Type type() const { return static_cast<Type>(data_.index()); }
  bool is_int() const { return type() == Type::kInt; }
  bool is_float() const { return type() == Type::kFloat; }
  bool is_bool() const { return type() == Type::kBool; }
  bool is_str() const { return type() == Type::kStr; }
  bool is_array() const { return type() == Type::kArray; }

  int64_t as_int() const { return std::get<0>(data_); }
  double as_float() const { return std::get<1>(data_); }
  bool as_bool() const { return std::get<2>(data_); }
  const std::string& as_str() const { return std::get<3>(data_); }
  const Array& as_array() const { return *std::get<4>(data_); }

  // Returns a writable array, detaching it from other holders first.
  Array& mutable_array();

  // Human-readable rendering. Never used for comparisons.
  std::string ToString() const;

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  using Data = std::variant<int64_t, double, bool, std::string,
                            std::shared_ptr<Array>>;
  explicit Value(Data data) : data_(std::move(data)) {}

  Data data_;
};

std::string_view TypeName(Value::Type type);

// Bit pattern of a binary64 value, as used by the tagged JSON encoding.
uint64_t FloatBits(double v);
double FloatFromBits(uint64_t bits);

}  // namespace reducto

#endif  // REDUCTO_VALUE_H_
