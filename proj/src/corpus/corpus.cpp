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


#include "corpus/corpus.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "formats/records.hpp"
#include "util/io.hpp"
#include "util/parallel.hpp"
#include "util/utf8.hpp"

namespace guwen::corpus {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void ingest_line_json(std::string_view content, const std::string& path, const std::string& source,
                      IngestResult& out) {
  const auto lines = formats::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto where = path + ":" + std::to_string(i + 1);
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      out.quarantined.push_back({where, "not a JSON object"});
      continue;
    }
    auto text = obj.find("text");
    if (text == obj.end() || !text->is_string()) {
      out.quarantined.push_back({where, "missing string \"text\""});
      continue;
    }
    RawDocument doc{source, path, text->get<std::string>(), {}};
    for (const auto& [key, value] : obj.items()) {
      if (key == "text" || !value.is_string()) continue;
      if (key == "source") {
        if (!value.get<std::string>().empty()) doc.source_id = value.get<std::string>();
        continue;
      }
      doc.meta[key] = value.get<std::string>();
    }
    out.documents.push_back(std::move(doc));
  }
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cells.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cells;
}

void ingest_tsv(std::string_view content, const std::string& path, const std::string& source,
                IngestResult& out) {
  const auto lines = formats::split_lines(content);
  if (lines.empty()) return;
  auto strip_cr = [](std::string_view s) { return !s.empty() && s.back() == '\r' ? s.substr(0, s.size() - 1) : s; };
  const auto header = split_tabs(strip_cr(lines[0]));
  const auto text_col = std::find(header.begin(), header.end(), "text") - header.begin();
  if (text_col == static_cast<std::ptrdiff_t>(header.size())) {
    out.quarantined.push_back({path, "TSV header has no \"text\" column"});
    return;
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = strip_cr(lines[i]);
    if (line.empty()) continue;
    auto cells = split_tabs(line);
    if (cells.size() != header.size()) {
      out.quarantined.push_back({path + ":" + std::to_string(i + 1),
                                 "expected " + std::to_string(header.size()) + " columns"});
      continue;
    }
    RawDocument doc{source, path, std::move(cells[text_col]), {}};
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (static_cast<std::ptrdiff_t>(c) == text_col) continue;
      if (header[c] == "source") {
        if (!cells[c].empty()) doc.source_id = cells[c];
      } else {
        doc.meta[header[c]] = cells[c];
      }
    }
    out.documents.push_back(std::move(doc));
  }
}

bool is_cjk_context(char32_t cp) {
  return chars::is_cjk_ideograph(cp) || (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF00 && cp <= 0xFFEF) ||
         (cp >= 0x2010 && cp <= 0x2027);
}

bool is_blank_line(std::u32string_view line) {
  return std::all_of(line.begin(), line.end(), [](char32_t c) { return chars::is_space(c); });
}

}  // namespace

std::optional<SourceFormat> source_format_from_string(std::string_view name) {
  if (name == "plain-text") return SourceFormat::kPlainText;
  if (name == "line-json") return SourceFormat::kLineJson;
  if (name == "tsv") return SourceFormat::kTsv;
  return std::nullopt;
}

std::string_view to_string(SourceFormat format) {
  switch (format) {
    case SourceFormat::kPlainText:
      return "plain-text";
    case SourceFormat::kLineJson:
      return "line-json";
    case SourceFormat::kTsv:
      return "tsv";
  }
  return "plain-text";
}

std::string source_id_for(const fs::path& file, const fs::path& root) {
  const auto rel = file.lexically_relative(root);
  if (!rel.empty() && rel.begin() != rel.end() && std::next(rel.begin()) != rel.end() &&
      *rel.begin() != "..") {
    return rel.begin()->string();
  }
  return file.stem().string();
}

IngestResult ingest_file(const fs::path& file, const fs::path& root, SourceFormat format) {
  IngestResult out;
  out.files = 1;
  const auto path = file.lexically_relative(root).generic_string();
  std::string content;
  try {
    content = io::read_file(file);
  } catch (const IoError& e) {
    out.quarantined.push_back({path, e.what()});
    return out;
  }
  if (!utf8::is_valid(content)) {
    out.quarantined.push_back({path, "invalid UTF-8"});
    return out;
  }
  const auto source = source_id_for(file, root);
  switch (format) {
    case SourceFormat::kPlainText:
      out.documents.push_back({source, path, std::move(content), {}});
      break;
    case SourceFormat::kLineJson:
      ingest_line_json(content, path, source, out);
      break;
    case SourceFormat::kTsv:
      ingest_tsv(content, path, source, out);
      break;
  }
  return out;
}

IngestResult ingest(const fs::path& root, SourceFormat format, std::size_t threads) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a readable directory: " + root.string());
  std::vector<fs::path> files;
  for (fs::recursive_directory_iterator it(root, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file()) files.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<IngestResult> parts(files.size());
  parallel_for(files.size(), threads, [&](std::size_t i) { parts[i] = ingest_file(files[i], root, format); });

  IngestResult out;
  for (auto& part : parts) {
    out.files += part.files;
    std::move(part.documents.begin(), part.documents.end(), std::back_inserter(out.documents));
    std::move(part.quarantined.begin(), part.quarantined.end(), std::back_inserter(out.quarantined));
  }
  return out;
}

RemovedCounts& RemovedCounts::operator+=(const RemovedCounts& other) {
  control_chars += other.control_chars;
  invalid_chars += other.invalid_chars;
  boilerplate_lines += other.boilerplate_lines;
  duplicate_docs += other.duplicate_docs;
  duplicate_paragraphs += other.duplicate_paragraphs;
  empty_docs += other.empty_docs;
  return *this;
}

Cleaner::Cleaner(CleanOptions options, const textnorm::ScriptTable& table)
    : options_(std::move(options)), table_(&table) {
  for (const auto& pattern : options_.boilerplate) patterns_.emplace_back(pattern, std::regex::ECMAScript);
}

RawDocument Cleaner::clean(RawDocument doc, RemovedCounts* removed) const {
  RemovedCounts local;
  // Dropping whitespace can give a mark new neighbours that width folding
  // treats differently, so passes repeat until nothing changes.
  for (int pass = 0; pass < 8; ++pass) {
    auto next = clean_pass(doc.text, local);
    if (next == doc.text) break;
    doc.text = std::move(next);
  }
  if (removed) *removed += local;
  return doc;
}

std::string Cleaner::clean_pass(std::string_view input, RemovedCounts& local) const {
  std::u32string text;
  const auto decoded = utf8::decode(input);
  text.reserve(decoded.size());
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    const char32_t cp = decoded[i];
    if (chars::is_invalid(cp)) {
      ++local.invalid_chars;
    } else if (cp == U'\r') {
      if (i + 1 >= decoded.size() || decoded[i + 1] != U'\n') text.push_back(U'\n');
    } else {
      text.push_back(cp);
    }
  }

  const auto norm = textnorm::normalize(utf8::encode(text), options_.policy, *table_);
  local.control_chars += norm.controls_removed;

  std::string out;
  for (auto line : formats::split_lines(norm.text)) {
    // A whitespace run survives as one space only between two non-CJK characters.
    const auto chars32 = utf8::decode(line);
    std::u32string collapsed;
    for (std::size_t i = 0; i < chars32.size();) {
      if (!chars::is_space(chars32[i])) {
        collapsed.push_back(chars32[i++]);
        continue;
      }
      std::size_t j = i;
      while (j < chars32.size() && chars::is_space(chars32[j])) ++j;
      if (!collapsed.empty() && j < chars32.size() && !is_cjk_context(collapsed.back()) &&
          !is_cjk_context(chars32[j])) {
        collapsed.push_back(U' ');
      }
      i = j;
    }
    if (is_blank_line(collapsed)) continue;
    const auto encoded = utf8::encode(collapsed);
    const bool boilerplate = std::any_of(patterns_.begin(), patterns_.end(),
                                         [&](const std::regex& re) { return std::regex_search(encoded, re); });
    if (boilerplate) {
      ++local.boilerplate_lines;
      continue;
    }
    if (!out.empty()) out += '\n';
    out += encoded;
  }
  return out;
}

bool Deduplicator::admit(RawDocument& doc, RemovedCounts* removed) {
  RemovedCounts local;
  const auto doc_hash = io::sha256_hex(doc.text);
  bool keep = true;
  {
    std::lock_guard lock(mu_);
    if (!docs_.insert(doc_hash).second) {
      ++local.duplicate_docs;
      keep = false;
    } else if (paragraphs_) {
      std::string kept;
      for (auto line : formats::split_lines(doc.text)) {
        if (!paragraphs_seen_.insert(io::sha256_hex(line)).second) {
          ++local.duplicate_paragraphs;
          continue;
        }
        if (!kept.empty()) kept += '\n';
        kept += line;
      }
      doc.text = std::move(kept);
    }
  }
  if (keep && doc.text.empty()) {
    ++local.empty_docs;
    keep = false;
  }
  if (removed) *removed += local;
  return keep;
}

std::vector<RawDocument> dedup(std::vector<RawDocument> docs, bool paragraphs, RemovedCounts* removed) {
  Deduplicator seen(paragraphs);
  std::vector<RawDocument> out;
  out.reserve(docs.size());
  for (auto& doc : docs) {
    if (seen.admit(doc, removed)) out.push_back(std::move(doc));
  }
  return out;
}

StatsTable stats(const std::vector<RawDocument>& docs) {
  std::map<std::string, SourceStats> by_source;
  StatsTable table;
  for (const auto& doc : docs) {
    auto& row = by_source[doc.source_id];
    row.source = doc.source_id;
    ++row.docs;
    row.bytes += doc.text.size();
    ++table.totals.docs;
    table.totals.bytes += doc.text.size();
  }
  for (auto& [_, row] : by_source) table.rows.push_back(std::move(row));
  return table;
}

std::string format_stats_tsv(const StatsTable& table) {
  std::ostringstream out;
  out << "source\tdocs\tbytes\n";
  for (const auto& row : table.rows) out << row.source << '\t' << row.docs << '\t' << row.bytes << '\n';
  out << table.totals.source << '\t' << table.totals.docs << '\t' << table.totals.bytes << '\n';
  return out.str();
}

std::string format_stats_markdown(const StatsTable& table) {
  std::ostringstream out;
  out << "| source | docs | bytes |\n|---|---:|---:|\n";
  for (const auto& row : table.rows) out << "| " << row.source << " | " << row.docs << " | " << row.bytes << " |\n";
  out << "| **" << table.totals.source << "** | " << table.totals.docs << " | " << table.totals.bytes << " |\n";
  return out.str();
}

std::string format_corpus_jsonl(const std::vector<RawDocument>& docs) {
  std::string out;
  for (const auto& doc : docs) {
    nlohmann::ordered_json line{{"source", doc.source_id}, {"text", doc.text}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace guwen::corpus
