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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bench/bench.hpp"
#include "bench/report.hpp"
#include "util/config.hpp"

namespace guwen::bench {

// Keys inventory, entity_aliases, script_table (file paths) and policy.
formats::Resources resources_from_json(const config::Json& obj, const std::filesystem::path& base);

struct ModelEntry {
  std::string name;
  config::Json client = config::Json::object();
  clients::ModelSettings settings;
};

struct EvalConfig {
  std::filesystem::path bench;
  std::vector<ModelEntry> models;
  config::Json embedding;  // null: reverse dictionary items stay unscored
  std::optional<std::filesystem::path> cache_dir;
  std::string prompt{kDefaultPrompt};
  formats::Resources resources;
  EvalOptions options;
  std::size_t sample = 0;  // 0 evaluates every item
  std::uint64_t seed = 0;
  bool check_official = false;
  std::filesystem::path base;
  // Settings that change scores, copied into every EvalRun.
  config::Json snapshot = config::Json::object();
};

// Keys: bench, models [{name, client, model, temperature, max_tokens,
// parallelism, retry}], embedding, cache_dir, prompt, scoring {pos_match,
// entity_match, count_terminal_marks}, preambles, sample, seed, threads,
// check_official, plus the resources_from_json keys.
EvalConfig eval_config_from_json(const config::Json& obj, const std::filesystem::path& base);

struct EvalSummary {
  std::size_t items = 0;
  std::vector<MalformedItem> malformed;
  std::vector<std::string> count_mismatches;
  std::vector<std::string> models;
  std::vector<std::filesystem::path> run_files;
  std::size_t cached = 0;
  std::size_t unanswered = 0;
};

// Runs the named models (all when empty). A name missing from the config
// that equals "mock" gets an echoing mock client. Writes
// <model>.evalrun.json and <model>.responses.jsonl per model, plus
// malformed.tsv when items were rejected.
EvalSummary run_eval(const EvalConfig& config, const std::filesystem::path& out_dir,
                     const std::vector<std::string>& only_models = {},
                     clients::Sleeper sleeper = clients::real_sleeper());

std::string run_file_name(const std::string& model);

struct ReportConfig {
  std::vector<std::filesystem::path> runs;
  ReportFormat format = ReportFormat::kAll;
};

// Keys: runs (EvalRun paths), format (all, markdown, csv, json).
ReportConfig report_config_from_json(const config::Json& obj, const std::filesystem::path& base);

// Reads every run, refusing files whose stored aggregates disagree with their items.
std::vector<std::string> run_report(const ReportConfig& config, const std::filesystem::path& out_dir);

enum class FileKind { kBench, kRecords };

struct ValidationReport {
  std::filesystem::path path;
  FileKind kind = FileKind::kBench;
  std::size_t valid = 0;
  std::vector<MalformedItem> problems;
  std::map<Task, std::size_t> counts;
  std::vector<std::string> count_mismatches;

  bool ok() const { return problems.empty() && count_mismatches.empty(); }
};

ValidationReport validate_file(const std::filesystem::path& path, FileKind kind, const formats::Resources& res,
                               bool check_official = false);

// path:line: reason lines, then per-task counts.
std::string format_validation(const ValidationReport& report);

}  // namespace guwen::bench
