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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bench/bench.hpp"

namespace guwen::bench {

// Task order of the radar and of every report table.
const std::vector<Task>& report_tasks();

// (x - min) / (max - min) over the present values. Equal values all map to 1.
std::vector<std::optional<double>> min_max_normalize(const std::vector<std::optional<double>>& values);

struct RadarData {
  bool normalized = false;  // false for a single run: values are raw
  std::vector<std::string> models;
  // [model][task], tasks in report_tasks() order.
  std::vector<std::vector<std::optional<double>>> raw;
  std::vector<std::vector<std::optional<double>>> values;
};

RadarData compute_radar(const std::vector<EvalRun>& runs);
std::string format_radar_json(const RadarData& radar);

std::string format_report_markdown(const std::vector<EvalRun>& runs);
std::string format_understanding_csv(const std::vector<EvalRun>& runs);
std::string format_generation_csv(const std::vector<EvalRun>& runs);
std::string format_sentence_bleu_csv(const std::vector<EvalRun>& runs);
std::string format_subcategory_csv(const std::vector<EvalRun>& runs);

enum class ReportFormat { kAll, kMarkdown, kCsv, kJson };
std::optional<ReportFormat> report_format_from_string(std::string_view name);

// Writes report.md, the CSV tables and radar.json as selected. Returns the
// written file names.
std::vector<std::string> write_report(const std::vector<EvalRun>& runs, const std::filesystem::path& out_dir,
                                      ReportFormat format = ReportFormat::kAll);

}  // namespace guwen::bench
