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


#include "corpus/pipeline.hpp"

#include "util/io.hpp"
#include "util/parallel.hpp"

namespace guwen::corpus {

CleanConfig clean_config_from_json(const config::Json& obj, const std::filesystem::path& base) {
  CleanConfig cfg;
  cfg.input_dir = config::resolve(base, config::get_string(obj, "input_dir"));
  if (cfg.input_dir.empty()) throw ConfigError("clean config needs \"input_dir\"");
  const auto format = config::get_string(obj, "format", "plain-text");
  auto parsed = source_format_from_string(format);
  if (!parsed) throw ConfigError("unknown corpus format: " + format);
  cfg.format = *parsed;
  if (obj.contains("policy")) cfg.options.policy = config::policy_from_json(obj["policy"]);
  cfg.options.boilerplate = config::get_strings(obj, "boilerplate");
  cfg.script_table = config::resolve(base, config::get_string(obj, "script_table"));
  cfg.dedup_paragraphs = config::get_bool(obj, "dedup_paragraphs", false);
  const auto threads = config::get_int(obj, "threads", 1);
  if (threads < 1) throw ConfigError("threads must be at least 1");
  cfg.threads = static_cast<std::size_t>(threads);
  return cfg;
}

std::vector<RawDocument> run_clean(const CleanConfig& config, CleanReport& report) {
  textnorm::ScriptTable custom;
  if (!config.script_table.empty()) custom = textnorm::ScriptTable::load(config.script_table);
  const auto& table = config.script_table.empty() ? textnorm::ScriptTable::builtin() : custom;
  Cleaner cleaner(config.options, table);

  auto ingested = ingest(config.input_dir, config.format, config.threads);
  report.files = ingested.files;
  report.quarantined = std::move(ingested.quarantined);
  auto& docs = ingested.documents;
  report.docs_in = docs.size();
  for (const auto& doc : docs) report.bytes_in += doc.text.size();

  std::vector<RemovedCounts> per_doc(docs.size());
  parallel_for(docs.size(), config.threads,
               [&](std::size_t i) { docs[i] = cleaner.clean(std::move(docs[i]), &per_doc[i]); });
  for (const auto& counts : per_doc) report.removed += counts;

  auto kept = dedup(std::move(docs), config.dedup_paragraphs, &report.removed);
  report.docs_out = kept.size();
  for (const auto& doc : kept) report.bytes_out += doc.text.size();
  report.stats = stats(kept);
  return kept;
}

config::Json report_to_json(const CleanReport& report) {
  const auto& r = report.removed;
  return config::Json{
      {"files", report.files},
      {"docs_in", report.docs_in},
      {"docs_out", report.docs_out},
      {"bytes_in", report.bytes_in},
      {"bytes_out", report.bytes_out},
      {"quarantined", report.quarantined.size()},
      {"removed",
       {{"control_chars", r.control_chars},
        {"invalid_chars", r.invalid_chars},
        {"boilerplate_lines", r.boilerplate_lines},
        {"duplicate_docs", r.duplicate_docs},
        {"duplicate_paragraphs", r.duplicate_paragraphs},
        {"empty_docs", r.empty_docs}}},
  };
}

CleanReport run_clean_to(const CleanConfig& config, const std::filesystem::path& out_dir) {
  CleanReport report;
  const auto docs = run_clean(config, report);
  io::write_file(out_dir / "corpus.jsonl", format_corpus_jsonl(docs));
  io::write_file(out_dir / "stats.tsv", format_stats_tsv(report.stats));
  io::write_file(out_dir / "stats.md", format_stats_markdown(report.stats));
  std::string quarantine = "path\treason\n";
  for (const auto& issue : report.quarantined) quarantine += issue.path + '\t' + issue.reason + '\n';
  io::write_file(out_dir / "quarantine.tsv", quarantine);
  io::write_file(out_dir / "clean_report.json", report_to_json(report).dump(2) + "\n");
  return report;
}

}  // namespace guwen::corpus
