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
#include <vector>

#include "corpus/corpus.hpp"
#include "util/config.hpp"

namespace guwen::corpus {

struct CleanConfig {
  std::filesystem::path input_dir;
  SourceFormat format = SourceFormat::kPlainText;
  CleanOptions options;
  std::filesystem::path script_table;  // empty: built-in
  bool dedup_paragraphs = false;
  std::size_t threads = 1;
};

// Keys: input_dir, format, policy, boilerplate, script_table,
// dedup_paragraphs, threads. Paths resolve against `base`.
CleanConfig clean_config_from_json(const config::Json& obj, const std::filesystem::path& base);

struct CleanReport {
  std::size_t files = 0;
  std::size_t docs_in = 0;
  std::size_t docs_out = 0;
  std::size_t bytes_in = 0;
  std::size_t bytes_out = 0;
  RemovedCounts removed;
  std::vector<IngestIssue> quarantined;
  StatsTable stats;
};

// Ingest, clean, dedup in input order. Returns the surviving documents.
std::vector<RawDocument> run_clean(const CleanConfig& config, CleanReport& report);

// Writes corpus.jsonl, stats.tsv, stats.md, quarantine.tsv and
// clean_report.json under `out_dir`.
CleanReport run_clean_to(const CleanConfig& config, const std::filesystem::path& out_dir);

config::Json report_to_json(const CleanReport& report);

}  // namespace guwen::corpus
