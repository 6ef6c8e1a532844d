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

#include "reducto/source.h"

#include <fstream>
#include <sstream>

#include "reducto/error.h"

namespace reducto {

SourceProgram SourceProgram::FromText(std::string id, std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return SourceProgram(std::move(id), std::move(lines));
}

SourceProgram SourceProgram::ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromText(path.stem().string(), buf.str());
}

std::string SourceProgram::ToText() const {
  std::string text;
  for (const auto& line : lines_) {
    text += line;
    text += '\n';
  }
  return text;
}

void SourceProgram::WriteFile(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << ToText();
}

LineClass ClassifyLine(std::string_view line) {
  size_t i = line.find_first_not_of(" \t\r");
  if (i == std::string_view::npos) return LineClass::kBlank;
  if (line[i] == '#') return LineClass::kComment;
  return LineClass::kStatement;
}

int CountSloc(const SourceProgram& program) {
  int count = 0;
  for (const auto& line : program.lines()) {
    if (ClassifyLine(line) == LineClass::kStatement) ++count;
  }
  return count;
}

}  // namespace reducto
