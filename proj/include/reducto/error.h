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

#ifndef REDUCTO_ERROR_H_
#define REDUCTO_ERROR_H_

#include <stdexcept>
#include <string>

namespace reducto {

// Pipeline-level failures. Parse failures and test outcomes are ordinary
// values and never thrown.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kManifest,
  kNoFailingTests,
  kMultiAssertTest,
  kInvalidSlice,
  kNotViable,
  kUnmappableEdit,
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kIo:
      return "Io";
    case ErrorCode::kManifest:
      return "ManifestError";
    case ErrorCode::kNoFailingTests:
      return "NoFailingTests";
    case ErrorCode::kMultiAssertTest:
      return "MultiAssertTest";
    case ErrorCode::kInvalidSlice:
      return "InvalidSlice";
    case ErrorCode::kNotViable:
      return "NotViable";
    case ErrorCode::kUnmappableEdit:
      return "UnmappableEdit";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace reducto

#endif  // REDUCTO_ERROR_H_
