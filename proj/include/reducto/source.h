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

#ifndef REDUCTO_SOURCE_H_
#define REDUCTO_SOURCE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace reducto {

// Raw program text as an ordered sequence of lines, numbered from 1. Line k
// is reported as line k in every diagnostic, coverage set and trace.
class SourceProgram {
 public:
  SourceProgram() = default;
  SourceProgram(std::string id, std::vector<std::string> lines)
      : id_(std::move(id)), lines_(std::move(lines)) {}

  // Splits on '\n'. A single trailing newline does not start a new line.
  static SourceProgram FromText(std::string id, std::string_view text);
  // Throws Error(kIo) when the file cannot be read.
  static SourceProgram ReadFile(const std::filesystem::path& path);

  std::string ToText() const;
  void WriteFile(const std::filesystem::path& path) const;

  const std::string& id() const { return id_; }
  const std::vector<std::string>& lines() const { return lines_; }
  int size() const { return static_cast<int>(lines_.size()); }
  const std::string& line(int number) const { return lines_[number - 1]; }

  friend bool operator==(const SourceProgram&, const SourceProgram&) = default;

 private:
  std::string id_;
  std::vector<std::string> lines_;
};

enum class LineClass { kBlank, kComment, kStatement };

LineClass ClassifyLine(std::string_view line);

// Non-blank, non-comment lines.
int CountSloc(const SourceProgram& program);

}  // namespace reducto

#endif  // REDUCTO_SOURCE_H_
