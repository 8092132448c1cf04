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


#include "bench/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>

#include "formats/records.hpp"
#include "util/io.hpp"
#include "util/rng.hpp"

namespace guwen::bench {
namespace {

namespace fs = std::filesystem;
using config::Json;

metrics::PosMatch pos_match_from(const std::string& name) {
  if (name == "multiset") return metrics::PosMatch::kMultiset;
  if (name == "span") return metrics::PosMatch::kSpan;
  throw ConfigError("unknown pos_match: " + name);
}

metrics::EntityMatch entity_match_from(const std::string& name) {
  if (name == "exact") return metrics::EntityMatch::kExact;
  if (name == "overlap") return metrics::EntityMatch::kOverlap;
  throw ConfigError("unknown entity_match: " + name);
}

ModelEntry model_entry_from_json(const Json& obj) {
  ModelEntry entry;
  entry.name = config::get_string(obj, "name");
  if (entry.name.empty()) throw ConfigError("each model needs a \"name\"");
  if (obj.contains("client")) entry.client = obj["client"];
  entry.settings = clients::model_settings_from_json(obj);
  if (!obj.contains("model")) entry.settings.model = entry.name;
  return entry;
}

ModelEntry builtin_mock() {
  ModelEntry entry;
  entry.name = "mock";
  entry.client = Json{{"type", "mock"}, {"fallback", "echo"}};
  entry.settings.model = "mock";
  return entry;
}

std::string format_malformed(const std::vector<MalformedItem>& malformed) {
  std::string out = "line\treason\n";
  for (const auto& m : malformed) out += std::to_string(m.line) + "\t" + m.reason + "\n";
  return out;
}

}  // namespace

formats::Resources resources_from_json(const Json& obj, const fs::path& base) {
  formats::Resources res;
  if (const auto p = config::get_string(obj, "inventory"); !p.empty()) {
    res.inventory = textnorm::PunctInventory::load(config::resolve(base, p));
  }
  if (const auto p = config::get_string(obj, "entity_aliases"); !p.empty()) {
    res.aliases = formats::EntityKeyAliases::load(config::resolve(base, p));
  }
  if (const auto p = config::get_string(obj, "script_table"); !p.empty()) {
    res.scripts = textnorm::ScriptTable::load(config::resolve(base, p));
  }
  if (obj.contains("policy")) res.policy = config::policy_from_json(obj["policy"]);
  return res;
}

EvalConfig eval_config_from_json(const Json& obj, const fs::path& base) {
  EvalConfig cfg;
  cfg.base = base;
  if (const auto p = config::get_string(obj, "bench"); !p.empty()) cfg.bench = config::resolve(base, p);
  if (obj.contains("models")) {
    if (!obj["models"].is_array()) throw ConfigError("\"models\" must be an array");
    std::set<std::string> names;
    for (const auto& m : obj["models"]) {
      auto entry = model_entry_from_json(m);
      if (!names.insert(entry.name).second) throw ConfigError("duplicate model name: " + entry.name);
      cfg.models.push_back(std::move(entry));
    }
  }
  if (obj.contains("embedding")) cfg.embedding = obj["embedding"];
  if (const auto p = config::get_string(obj, "cache_dir"); !p.empty()) cfg.cache_dir = config::resolve(base, p);
  cfg.prompt = config::get_string(obj, "prompt", std::string(kDefaultPrompt));
  cfg.resources = resources_from_json(obj, base);

  Json scoring = obj.contains("scoring") ? obj["scoring"] : Json::object();
  auto& score = cfg.options.score;
  score.pos_match = pos_match_from(config::get_string(scoring, "pos_match", "multiset"));
  score.entity_match = entity_match_from(config::get_string(scoring, "entity_match", "exact"));
  score.punct.count_terminal_marks = config::get_bool(scoring, "count_terminal_marks", true);
  if (obj.contains("preambles")) cfg.options.extract.preambles = config::get_strings(obj, "preambles");

  const auto sample = config::get_int(obj, "sample", 0);
  const auto threads = config::get_int(obj, "threads", 1);
  if (sample < 0 || threads < 1) throw ConfigError("sample must be >= 0 and threads >= 1");
  cfg.sample = static_cast<std::size_t>(sample);
  cfg.options.threads = static_cast<std::size_t>(threads);
  cfg.seed = static_cast<std::uint64_t>(config::get_int(obj, "seed", 0));
  cfg.check_official = config::get_bool(obj, "check_official", false);

  // Paths are kept as written so snapshots do not depend on the checkout location.
  cfg.snapshot = Json{{"bench", config::get_string(obj, "bench")},
                      {"prompt", cfg.prompt},
                      {"scoring", Json{{"pos_match", config::get_string(scoring, "pos_match", "multiset")},
                                       {"entity_match", config::get_string(scoring, "entity_match", "exact")},
                                       {"count_terminal_marks", score.punct.count_terminal_marks}}},
                      {"preambles", cfg.options.extract.preambles},
                      {"sample", cfg.sample},
                      {"embedding", cfg.embedding},
                      {"inventory", config::get_string(obj, "inventory")},
                      {"entity_aliases", config::get_string(obj, "entity_aliases")},
                      {"script_table", config::get_string(obj, "script_table")}};
  return cfg;
}

std::string run_file_name(const std::string& model) {
  std::string out;
  for (unsigned char c : model) {
    out += (std::isalnum(c) || c == '-' || c == '_' || c == '.') ? static_cast<char>(c) : '_';
  }
  if (out.empty() || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

EvalSummary run_eval(const EvalConfig& cfg, const fs::path& out_dir, const std::vector<std::string>& only_models,
                     clients::Sleeper sleeper) {
  if (cfg.bench.empty()) throw ConfigError("no benchmark file given");
  std::vector<ModelEntry> models;
  if (only_models.empty()) {
    models = cfg.models;
  } else {
    for (const auto& name : only_models) {
      const auto it = std::find_if(cfg.models.begin(), cfg.models.end(), [&](const auto& m) { return m.name == name; });
      if (it != cfg.models.end()) {
        models.push_back(*it);
      } else if (name == "mock") {
        models.push_back(builtin_mock());
      } else {
        throw ConfigError("model not in config: " + name);
      }
    }
  }
  if (models.empty()) throw ConfigError("no models to evaluate");

  EvalSummary summary;
  auto loaded = load_bench(cfg.bench, cfg.resources);
  summary.malformed = loaded.malformed;
  if (!loaded.malformed.empty()) io::write_file(out_dir / "malformed.tsv", format_malformed(loaded.malformed));
  if (cfg.check_official) summary.count_mismatches = check_official_counts(loaded.task_counts());
  auto items = std::move(loaded.items);
  if (cfg.sample > 0) {
    SeededRng rng(cfg.seed);
    items = rng.sample(items, cfg.sample);
  }
  summary.items = items.size();

  std::unique_ptr<metrics::EmbeddingProvider> embedder;
  if (cfg.embedding.is_object()) embedder = clients::make_embedding_provider(cfg.embedding, cfg.base);

  for (const auto& model : models) {
    auto client = clients::make_chat_client(model.client, cfg.base);
    RunOptions run_opts;
    run_opts.settings = model.settings;
    run_opts.prompt_template = cfg.prompt;
    run_opts.cache_dir = cfg.cache_dir;
    run_opts.cache_name = model.name;
    run_opts.sleeper = sleeper;
    const auto responses = run_model(items, *client, run_opts);
    for (const auto& r : responses) {
      summary.cached += r.cached ? 1 : 0;
      summary.unanswered += r.content ? 0 : 1;
    }

    auto run = evaluate(model.name, items, responses, cfg.resources, cfg.options, embedder.get());
    run.seed = cfg.seed;
    run.config = cfg.snapshot;
    run.config["model"] = Json{{"name", model.name},
                               {"client", model.client},
                               {"settings", clients::model_settings_to_json(model.settings)}};

    const auto stem = run_file_name(model.name);
    const auto path = out_dir / (stem + ".evalrun.json");
    io::write_file(path, format_eval_run(run));
    io::write_file(out_dir / (stem + ".responses.jsonl"), format_response_log(responses));
    summary.models.push_back(model.name);
    summary.run_files.push_back(path);
  }
  return summary;
}

ReportConfig report_config_from_json(const Json& obj, const fs::path& base) {
  ReportConfig cfg;
  for (const auto& p : config::get_strings(obj, "runs")) cfg.runs.push_back(config::resolve(base, p));
  const auto name = config::get_string(obj, "format", "all");
  const auto format = report_format_from_string(name);
  if (!format) throw ConfigError("unknown report format: " + name);
  cfg.format = *format;
  return cfg;
}

std::vector<std::string> run_report(const ReportConfig& cfg, const fs::path& out_dir) {
  if (cfg.runs.empty()) throw ConfigError("report needs at least one EvalRun file");
  std::vector<EvalRun> runs;
  for (const auto& path : cfg.runs) {
    Json obj;
    try {
      obj = Json::parse(io::read_file(path));
    } catch (const Json::parse_error& e) {
      throw BenchError(path.string() + ": " + e.what());
    }
    if (!aggregates_consistent(obj)) {
      throw BenchError(path.string() + ": stored aggregates differ from the per-item results");
    }
    runs.push_back(eval_run_from_json(obj));
  }
  return write_report(runs, out_dir, cfg.format);
}

ValidationReport validate_file(const fs::path& path, FileKind kind, const formats::Resources& res,
                               bool check_official) {
  ValidationReport report;
  report.path = path;
  report.kind = kind;
  const auto content = io::read_file(path);
  if (kind == FileKind::kBench) {
    auto loaded = parse_bench(content, res);
    report.valid = loaded.items.size();
    report.problems = std::move(loaded.malformed);
    report.counts = loaded.task_counts();
    if (check_official) report.count_mismatches = check_official_counts(report.counts);
    return report;
  }

  const auto parsed = formats::parse_records(content);
  std::set<std::size_t> bad;
  for (const auto& e : parsed.errors) {
    bad.insert(e.line);
    report.problems.push_back({e.line, e.reason});
  }
  std::size_t line = 0;
  for (const auto& record : parsed.records) {
    do ++line;
    while (bad.count(line));
    auto reason = formats::validate_output(record.task, record.input, record.output, res);
    if (reason) {
      report.problems.push_back({line, *reason});
    } else {
      ++report.valid;
      ++report.counts[record.task];
    }
  }
  std::sort(report.problems.begin(), report.problems.end(),
            [](const auto& a, const auto& b) { return a.line < b.line; });
  return report;
}

std::string format_validation(const ValidationReport& report) {
  std::string out;
  for (const auto& p : report.problems) {
    out += report.path.string() + ":" + std::to_string(p.line) + ": " + p.reason + "\n";
  }
  for (const auto& m : report.count_mismatches) out += report.path.string() + ": count mismatch: " + m + "\n";
  std::size_t total = 0;
  for (const auto& [task, n] : report.counts) {
    out += std::string(formats::to_string(task)) + "\t" + std::to_string(n) + "\n";
    total += n;
  }
  out += "total\t" + std::to_string(total) + "\n";
  out += "invalid\t" + std::to_string(report.problems.size()) + "\n";
  return out;
}

}  // namespace guwen::bench
