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

#include "formats/records.hpp"

#include <json.hpp>

#include "util/io.hpp"
#include "util/utf8.hpp"

namespace guwen::formats {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string parse_line(std::string_view line, InstructionRecord& out) {
  if (line.empty()) return "empty line";
  if (!utf8::is_valid(line)) return "invalid UTF-8";
  auto doc = nlohmann::json::parse(line, nullptr, false);
  if (doc.is_discarded()) return "invalid JSON";
  if (!doc.is_object()) return "not a JSON object";
  for (const char* k : {"instruction", "input", "output", "task", "source", "stage"}) {
    auto it = doc.find(k);
    if (it == doc.end()) return std::string("missing key '") + k + "'";
    if (!it->is_string()) return std::string("key '") + k + "' is not a string";
  }
  auto task = task_from_string(doc["task"].get<std::string>());
  if (!task) return "unknown task '" + doc["task"].get<std::string>() + "'";
  auto stage = stage_from_string(doc["stage"].get<std::string>());
  if (!stage) return "unknown stage '" + doc["stage"].get<std::string>() + "'";
  out.instruction = doc["instruction"].get<std::string>();
  out.input = doc["input"].get<std::string>();
  out.output = doc["output"].get<std::string>();
  out.task = *task;
  out.source = doc["source"].get<std::string>();
  out.stage = *stage;
  if (out.instruction.empty()) return "empty instruction";
  if (out.stage == Stage::kIntegrated && out.output.empty()) return "empty output on integrated record";
  return {};
}

}  // namespace

std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    auto line = content.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

RecordReadResult parse_records(std::string_view content) {
  RecordReadResult result;
  const auto lines = split_lines(content);
  result.line_count = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    InstructionRecord record;
    std::string reason;
    try {
      reason = parse_line(lines[i], record);
    } catch (const std::exception& e) {
      reason = e.what();
    }
    if (reason.empty()) {
      result.records.push_back(std::move(record));
    } else {
      result.errors.push_back({i + 1, std::move(reason)});
    }
  }
  return result;
}

RecordReadResult read_records(const std::filesystem::path& path) { return parse_records(io::read_file(path)); }

std::string format_record(const InstructionRecord& r) {
  ordered_json j;
  j["instruction"] = r.instruction;
  j["input"] = r.input;
  j["output"] = r.output;
  j["task"] = to_string(r.task);
  j["source"] = r.source;
  j["stage"] = to_string(r.stage);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string format_records(const std::vector<InstructionRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

void write_records(const std::vector<InstructionRecord>& records, const std::filesystem::path& path) {
  io::write_file(path, format_records(records));
}

}  // namespace guwen::formats
