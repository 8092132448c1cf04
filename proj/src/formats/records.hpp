// Copyright 2026 The Guwen Authors
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "formats/task.hpp"

namespace guwen::formats {

struct InstructionRecord {
  std::string instruction;
  std::string input;
  std::string output;
  Task task = Task::kOther;
  std::string source;
  Stage stage = Stage::kSeed;

  bool operator==(const InstructionRecord&) const = default;
};

struct MalformedLine {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct RecordReadResult {
  std::vector<InstructionRecord> records;
  std::vector<MalformedLine> errors;
  std::size_t line_count = 0;
};

// One JSON object per line with keys instruction, input, output, task,
// source, stage. Never throws on content: every line becomes either a
// record or a MalformedLine, blank lines included.
RecordReadResult parse_records(std::string_view content);
RecordReadResult read_records(const std::filesystem::path& path);

std::string format_record(const InstructionRecord& record);
std::string format_records(const std::vector<InstructionRecord>& records);
void write_records(const std::vector<InstructionRecord>& records, const std::filesystem::path& path);

// Splits on '\n'; a trailing newline does not open a further line.
std::vector<std::string_view> split_lines(std::string_view content);

}  // namespace guwen::formats
