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
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "textnorm/normalize.hpp"

namespace guwen::corpus {

enum class SourceFormat { kPlainText, kLineJson, kTsv };

std::optional<SourceFormat> source_format_from_string(std::string_view name);
std::string_view to_string(SourceFormat format);

struct RawDocument {
  std::string source_id;
  std::string path;
  std::string text;
  std::map<std::string, std::string> meta;

  bool operator==(const RawDocument&) const = default;
};

struct IngestIssue {
  std::string path;
  std::string reason;
};

struct IngestResult {
  std::vector<RawDocument> documents;
  std::vector<IngestIssue> quarantined;
  std::size_t files = 0;
};

// Documents from one file. Invalid UTF-8 anywhere in the file quarantines
// the whole file. Line-json lines need a string "text"; a string "source"
// overrides the path-derived source id. TSV files need a header row with a
// "text" column; other columns go to meta.
IngestResult ingest_file(const std::filesystem::path& file, const std::filesystem::path& root,
                         SourceFormat format);

// Regular files under `root`, recursively, in sorted path order. Files are
// read on up to `threads` workers; results keep the sorted order.
IngestResult ingest(const std::filesystem::path& root, SourceFormat format, std::size_t threads = 1);

// First path component below root for files in subdirectories, else the stem.
std::string source_id_for(const std::filesystem::path& file, const std::filesystem::path& root);

struct RemovedCounts {
  std::size_t control_chars = 0;
  std::size_t invalid_chars = 0;
  std::size_t boilerplate_lines = 0;
  std::size_t duplicate_docs = 0;
  std::size_t duplicate_paragraphs = 0;
  std::size_t empty_docs = 0;

  RemovedCounts& operator+=(const RemovedCounts& other);
  bool operator==(const RemovedCounts&) const = default;
};

struct CleanOptions {
  textnorm::NormPolicy policy;
  // ECMAScript regexes searched against each cleaned line.
  std::vector<std::string> boilerplate;
};

class Cleaner {
 public:
  explicit Cleaner(CleanOptions options = {},
                   const textnorm::ScriptTable& table = textnorm::ScriptTable::builtin());

  // Invalid characters dropped, line endings unified to '\n', text
  // normalized, whitespace runs next to CJK removed and other runs collapsed
  // to one space, lines trimmed, empty and boilerplate lines dropped.
  // Idempotent.
  RawDocument clean(RawDocument doc, RemovedCounts* removed = nullptr) const;

 private:
  std::string clean_pass(std::string_view text, RemovedCounts& removed) const;

  CleanOptions options_;
  const textnorm::ScriptTable* table_;
  std::vector<std::regex> patterns_;
};

// First occurrence wins. admit() may be called from several threads; the
// caller decides the order, and so which copy survives.
class Deduplicator {
 public:
  explicit Deduplicator(bool paragraphs = false) : paragraphs_(paragraphs) {}

  // False when the document is dropped. With paragraph dedup on, repeated
  // lines are removed from `doc` in place and a document left empty is dropped.
  bool admit(RawDocument& doc, RemovedCounts* removed = nullptr);

 private:
  bool paragraphs_;
  std::mutex mu_;
  std::unordered_set<std::string> docs_;
  std::unordered_set<std::string> paragraphs_seen_;
};

std::vector<RawDocument> dedup(std::vector<RawDocument> docs, bool paragraphs = false,
                               RemovedCounts* removed = nullptr);

struct SourceStats {
  std::string source;
  std::size_t docs = 0;
  std::size_t bytes = 0;

  bool operator==(const SourceStats&) const = default;
};

struct StatsTable {
  std::vector<SourceStats> rows;  // sorted by source
  SourceStats totals{"total", 0, 0};
};

StatsTable stats(const std::vector<RawDocument>& docs);
std::string format_stats_tsv(const StatsTable& table);
std::string format_stats_markdown(const StatsTable& table);

// {"source": ..., "text": ...} per line.
std::string format_corpus_jsonl(const std::vector<RawDocument>& docs);

}  // namespace guwen::corpus
