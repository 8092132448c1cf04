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


#include "datagen/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "util/io.hpp"
#include "util/rng.hpp"

namespace guwen::datagen {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

Task parse_task(const std::string& name) {
  auto task = formats::task_from_string(name);
  if (!task || *task == Task::kOther) throw ConfigError("unknown task: " + name);
  return *task;
}

std::optional<Origin> origin_from_string(std::string_view s) {
  for (auto o : {Origin::kManual, Origin::kExpanded, Origin::kReverse}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

std::optional<Status> status_from_string(std::string_view s) {
  for (auto st : {Status::kPending, Status::kAccepted, Status::kRejected}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string read_required(const fs::path& path, const std::string& stage) {
  if (!fs::exists(path)) {
    throw IoError("stage " + stage + " needs " + path.string() + "; run the earlier stages first");
  }
  return io::read_file(path);
}

std::string format_rejects(const std::vector<RejectedRecord>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    auto line = ordered_json::parse(formats::format_record(r.record));
    line["reason"] = r.reason;
    out += line.dump() + "\n";
  }
  return out;
}

std::string format_pilot(const std::vector<PilotScore>& scores) {
  std::string out = "rank\tid\ttask\tmean\tscored\tunscored\tinstruction\n";
  std::size_t rank = 0;
  for (const auto& s : scores) {
    char mean[32];
    std::snprintf(mean, sizeof mean, "%.6f", s.mean);
    out += std::to_string(++rank) + '\t' + s.candidate_id + '\t' + std::string(formats::to_string(s.task)) + '\t' +
           mean + '\t' + std::to_string(s.scored) + '\t' + std::to_string(s.unscored) + '\t' + s.instruction + '\n';
  }
  return out;
}

std::vector<std::string> pilot_ids(std::string_view tsv) {
  std::vector<std::string> ids;
  auto lines = formats::split_lines(tsv);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto first = lines[i].find('\t');
    const auto second = lines[i].find('\t', first + 1);
    if (first != std::string_view::npos && second != std::string_view::npos) {
      ids.emplace_back(lines[i].substr(first + 1, second - first - 1));
    }
  }
  return ids;
}

}  // namespace

std::string format_pairs(const std::vector<IOPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    ordered_json line{{"id", p.id},
                      {"task", formats::to_string(p.task)},
                      {"source", p.source},
                      {"input", p.input},
                      {"output", p.output}};
    out += line.dump() + "\n";
  }
  return out;
}

std::vector<IOPair> parse_pairs(std::string_view text) {
  std::vector<IOPair> out;
  std::size_t n = 0;
  for (auto line : formats::split_lines(text)) {
    ++n;
    if (line.empty()) continue;
    auto j = config::Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw DatagenError("pairs line " + std::to_string(n) + " is not JSON");
    out.push_back({config::get_string(j, "id"), config::get_string(j, "input"), config::get_string(j, "output"),
                   parse_task(config::get_string(j, "task")), config::get_string(j, "source")});
  }
  return out;
}

std::string format_candidates(const std::vector<InstructionCandidate>& candidates) {
  std::string out;
  for (const auto& c : candidates) {
    ordered_json line{{"id", c.id},
                      {"task", formats::to_string(c.task)},
                      {"origin", to_string(c.origin)},
                      {"parent", c.parent},
                      {"status", to_string(c.status)},
                      {"reason", c.reason},
                      {"text", c.text}};
    out += line.dump() + "\n";
  }
  return out;
}

std::vector<InstructionCandidate> parse_candidates(std::string_view text) {
  std::vector<InstructionCandidate> out;
  std::size_t n = 0;
  for (auto line : formats::split_lines(text)) {
    ++n;
    if (line.empty()) continue;
    auto j = config::Json::parse(line, nullptr, false);
    auto origin = origin_from_string(config::get_string(j, "origin"));
    auto status = status_from_string(config::get_string(j, "status"));
    if (j.is_discarded() || !origin || !status) {
      throw DatagenError("candidates line " + std::to_string(n) + " is malformed");
    }
    out.push_back({config::get_string(j, "id"), config::get_string(j, "text"), parse_task(config::get_string(j, "task")),
                   *origin, config::get_string(j, "parent"), *status, config::get_string(j, "reason")});
  }
  return out;
}

DatagenConfig datagen_config_from_json(const config::Json& obj, const fs::path& base) {
  DatagenConfig cfg;
  cfg.base = base;
  if (obj.contains("sources")) {
    for (const auto& s : obj["sources"]) {
      SourceSpec spec;
      spec.path = config::resolve(base, config::get_string(s, "path"));
      if (spec.path.empty()) throw ConfigError("each source needs a \"path\"");
      spec.task = parse_task(config::get_string(s, "task"));
      const auto format = config::get_string(s, "format", "line-json");
      auto parsed = corpus::source_format_from_string(format);
      if (!parsed) throw ConfigError("unknown source format: " + format);
      spec.format = *parsed;
      cfg.sources.push_back(spec);
    }
  }
  for (const auto& p : config::get_strings(obj, "supplementary")) cfg.supplementary.push_back(config::resolve(base, p));
  if (obj.contains("client")) cfg.client = obj["client"];
  if (obj.contains("embedding")) cfg.embedding = obj["embedding"];
  if (obj.contains("generator")) cfg.model = clients::model_settings_from_json(obj["generator"]);
  cfg.templates_dir = config::resolve(base, config::get_string(obj, "templates_dir"));
  if (obj.contains("seeds")) {
    for (const auto& [task, text] : obj["seeds"].items()) {
      parse_task(task);
      if (!text.is_string()) throw ConfigError("seed instructions must be strings");
      cfg.seeds[task] = text.get<std::string>();
    }
  }
  auto count = [&](const char* key, std::size_t fallback) {
    const auto v = config::get_int(obj, key, static_cast<long long>(fallback));
    if (v < 0) throw ConfigError(std::string(key) + " must not be negative");
    return static_cast<std::size_t>(v);
  };
  cfg.reverse_pairs = count("reverse_pairs", cfg.reverse_pairs);
  cfg.pilot_sample = count("pilot_sample", cfg.pilot_sample);
  cfg.generate_inputs = count("generate_inputs", cfg.generate_inputs);
  cfg.top_instructions = count("top_instructions", cfg.top_instructions);
  if (obj.contains("filter")) {
    cfg.filter.min_length = static_cast<std::size_t>(config::get_int(obj["filter"], "min_length", 10));
    cfg.filter.max_length = static_cast<std::size_t>(config::get_int(obj["filter"], "max_length", 500));
  }
  cfg.manual_decisions = config::resolve(base, config::get_string(obj, "manual_decisions"));
  if (obj.contains("stages")) {
    cfg.stages = config::get_strings(obj, "stages");
    for (const auto& s : cfg.stages) {
      if (std::find(all_stages().begin(), all_stages().end(), s) == all_stages().end()) {
        throw ConfigError("unknown datagen stage: " + s);
      }
    }
  }
  cfg.seed = static_cast<std::uint64_t>(config::get_int(obj, "seed", 0));
  return cfg;
}

DatagenSummary run_datagen(const DatagenConfig& cfg, const fs::path& out, clients::Sleeper sleeper) {
  DatagenSummary summary;
  const auto wants = [&](const std::string& stage) {
    return std::find(cfg.stages.begin(), cfg.stages.end(), stage) != cfg.stages.end();
  };
  const auto templates = cfg.templates_dir.empty() ? TemplateSet::builtin() : TemplateSet::load_dir(cfg.templates_dir);
  const auto& res = formats::Resources::defaults();
  GenerationSettings settings{cfg.model, std::move(sleeper)};
  std::unique_ptr<clients::ChatClient> client;
  auto chat = [&]() -> clients::ChatClient& {
    if (!client) client = clients::make_chat_client(cfg.client, cfg.base);
    return *client;
  };

  std::optional<std::vector<IOPair>> pairs;
  std::optional<std::vector<InstructionCandidate>> candidates;
  std::optional<std::vector<InstructionCandidate>> accepted;
  std::optional<std::vector<std::string>> ranking;
  std::optional<std::vector<InstructionRecord>> generated;

  auto need_pairs = [&](const std::string& stage) -> std::vector<IOPair>& {
    if (!pairs) pairs = parse_pairs(read_required(out / "pairs.jsonl", stage));
    return *pairs;
  };
  auto need_candidates = [&](const std::string& stage) -> std::vector<InstructionCandidate>& {
    if (!candidates) candidates = parse_candidates(read_required(out / "candidates.jsonl", stage));
    return *candidates;
  };
  auto need_accepted = [&](const std::string& stage) -> std::vector<InstructionCandidate>& {
    if (!accepted) accepted = parse_candidates(read_required(out / "seed_instructions.jsonl", stage));
    return *accepted;
  };
  auto tasks_of = [&](const std::vector<IOPair>& ps) {
    std::vector<Task> tasks;
    for (const auto& s : cfg.sources) {
      if (std::find(tasks.begin(), tasks.end(), s.task) == tasks.end()) tasks.push_back(s.task);
    }
    for (const auto& p : ps) {
      if (std::find(tasks.begin(), tasks.end(), p.task) == tasks.end()) tasks.push_back(p.task);
    }
    return tasks;
  };

  for (const auto& stage : all_stages()) {
    if (!wants(stage)) continue;
    summary.stages_run.push_back(stage);

    if (stage == "pairs") {
      pairs.emplace();
      std::string issues = "record_id\treason\n";
      for (const auto& src : cfg.sources) {
        auto ingested = corpus::ingest_file(src.path, src.path.parent_path(), src.format);
        for (const auto& q : ingested.quarantined) {
          issues += q.path + '\t' + q.reason + '\n';
          ++summary.pair_issues;
        }
        auto built = build_pairs(ingested.documents, src.task, res);
        for (const auto& issue : built.issues) issues += issue.record_id + '\t' + issue.reason + '\n';
        summary.pair_issues += built.issues.size();
        std::move(built.pairs.begin(), built.pairs.end(), std::back_inserter(*pairs));
      }
      io::write_file(out / "pairs.jsonl", format_pairs(*pairs));
      io::write_file(out / "pair_issues.tsv", issues);
      summary.pairs = pairs->size();
    } else if (stage == "seed") {
      candidates.emplace();
      for (auto task : tasks_of(need_pairs(stage))) {
        const auto name = std::string(formats::to_string(task));
        auto it = cfg.seeds.find(name);
        const auto text = it != cfg.seeds.end() ? it->second : templates.seed(task);
        candidates->push_back({"seed:" + name, text, task, Origin::kManual, {}, Status::kPending, {}});
      }
      io::write_file(out / "candidates.jsonl", format_candidates(*candidates));
    } else if (stage == "expand" || stage == "reverse") {
      auto& all = need_candidates(stage);
      std::vector<InstructionCandidate> fresh;
      if (stage == "expand") {
        std::vector<InstructionCandidate> seeds;
        for (const auto& c : all) {
          if (c.origin == Origin::kManual) seeds.push_back(c);
        }
        fresh = expand_instructions(seeds, chat(), settings, templates, summary.log);
      } else {
        std::vector<IOPair> chosen;
        const auto& ps = need_pairs(stage);
        for (auto task : tasks_of(ps)) {
          std::vector<IOPair> of_task;
          for (const auto& p : ps) {
            if (p.task == task) of_task.push_back(p);
          }
          SeededRng rng(cfg.seed + 101 + static_cast<std::uint64_t>(task));
          for (auto& p : rng.sample(of_task, cfg.reverse_pairs)) chosen.push_back(std::move(p));
        }
        if (!chosen.empty()) fresh = reverse_reason(chosen, chat(), settings, templates, summary.log);
      }
      std::set<std::string> texts;
      for (const auto& c : all) texts.insert(c.text);
      for (auto& c : fresh) {
        if (texts.insert(c.text).second) all.push_back(std::move(c));
      }
      io::write_file(out / "candidates.jsonl", format_candidates(all));
    } else if (stage == "filter") {
      ManualDecisions manual;
      if (!cfg.manual_decisions.empty()) manual = parse_manual_decisions(io::read_file(cfg.manual_decisions));
      auto& all = need_candidates(stage);
      auto result = filter_candidates(all, cfg.filter, manual, res);
      std::map<std::string, InstructionCandidate> by_id;
      for (const auto& c : result.accepted) by_id[c.id] = c;
      for (const auto& c : result.rejected) by_id[c.id] = c;
      for (auto& c : all) c = by_id[c.id];
      accepted = result.accepted;
      summary.accepted = result.accepted.size();
      summary.rejected = result.rejected.size();
      io::write_file(out / "candidates.jsonl", format_candidates(all));
      io::write_file(out / "seed_instructions.jsonl", format_candidates(*accepted));
    } else if (stage == "pilot") {
      std::unique_ptr<metrics::EmbeddingProvider> embedder = clients::make_embedding_provider(cfg.embedding, cfg.base);
      auto scores = pilot_test(need_accepted(stage), need_pairs(stage), chat(), settings, templates,
                               {cfg.pilot_sample, cfg.seed}, res, embedder.get());
      ranking.emplace();
      for (const auto& s : scores) ranking->push_back(s.candidate_id);
      io::write_file(out / "pilot.tsv", format_pilot(scores));
    } else if (stage == "generate") {
      auto instructions = need_accepted(stage);
      if (!ranking && fs::exists(out / "pilot.tsv")) ranking = pilot_ids(io::read_file(out / "pilot.tsv"));
      if (ranking) {
        std::map<std::string, std::size_t> rank;
        for (std::size_t i = 0; i < ranking->size(); ++i) rank.emplace((*ranking)[i], i);
        std::stable_sort(instructions.begin(), instructions.end(), [&](const auto& a, const auto& b) {
          auto ra = rank.count(a.id) ? rank[a.id] : rank.size();
          auto rb = rank.count(b.id) ? rank[b.id] : rank.size();
          return ra < rb;
        });
      }
      if (cfg.top_instructions > 0) {
        std::map<Task, std::size_t> kept;
        std::erase_if(instructions, [&](const auto& c) { return ++kept[c.task] > cfg.top_instructions; });
      }
      const auto& ps = need_pairs(stage);
      GenerateResult all;
      for (std::size_t i = 0; i < instructions.size(); ++i) {
        std::vector<IOPair> of_task;
        for (const auto& p : ps) {
          if (p.task == instructions[i].task) of_task.push_back(p);
        }
        SeededRng rng(cfg.seed + 7919 * (i + 1));
        auto inputs = rng.sample(of_task, cfg.generate_inputs);
        auto part = generate_answers({instructions[i]}, inputs, chat(), settings, templates, res);
        std::move(part.records.begin(), part.records.end(), std::back_inserter(all.records));
        std::move(part.rejects.begin(), part.rejects.end(), std::back_inserter(all.rejects));
      }
      generated = all.records;
      summary.generated = all.records.size();
      summary.generation_rejects = all.rejects.size();
      io::write_file(out / "generated.jsonl", formats::format_records(all.records));
      io::write_file(out / "rejects.jsonl", format_rejects(all.rejects));
    } else if (stage == "integrate") {
      std::vector<std::vector<InstructionRecord>> sets;
      // Corpus pairs under their task's first accepted instruction.
      std::vector<InstructionRecord> from_pairs;
      std::map<Task, std::string> instruction_for;
      for (const auto& c : need_accepted(stage)) instruction_for.emplace(c.task, c.text);
      for (const auto& p : need_pairs(stage)) {
        auto it = instruction_for.find(p.task);
        if (it != instruction_for.end()) {
          from_pairs.push_back({it->second, p.input, p.output, p.task, p.source, formats::Stage::kSeed});
        }
      }
      sets.push_back(std::move(from_pairs));
      if (!generated) {
        auto read = formats::parse_records(read_required(out / "generated.jsonl", stage));
        if (!read.errors.empty()) {
          throw DatagenError("generated.jsonl line " + std::to_string(read.errors[0].line) + ": " + read.errors[0].reason);
        }
        generated = std::move(read.records);
      }
      sets.push_back(*generated);
      for (const auto& path : cfg.supplementary) {
        auto read = formats::read_records(path);
        if (!read.errors.empty()) {
          throw DatagenError(path.string() + " line " + std::to_string(read.errors[0].line) + ": " +
                             read.errors[0].reason);
        }
        sets.push_back(std::move(read.records));
      }
      auto result = integrate(sets, res);
      summary.dataset = result.records.size();
      io::write_file(out / "dataset.jsonl", formats::format_records(result.records));
      io::write_file(out / "dataset_stats.tsv", format_dataset_stats(result.stats));
    } else if (stage == "export") {
      export_training_config(TrainingStage::kPretrain, out / "pretrain.cfg");
      export_training_config(TrainingStage::kSft, out / "sft.cfg");
    }
  }
  if (candidates) summary.candidates = candidates->size();

  std::string log;
  for (const auto& line : summary.log) log += line + '\n';
  io::write_file(out / "generation_log.txt", log);
  ordered_json run{{"seed", cfg.seed},
                   {"stages", summary.stages_run},
                   {"generator", clients::model_settings_to_json(cfg.model)},
                   {"pilot_sample", cfg.pilot_sample},
                   {"generate_inputs", cfg.generate_inputs},
                   {"filter", {{"min_length", cfg.filter.min_length}, {"max_length", cfg.filter.max_length}}}};
  io::write_file(out / "datagen_run.json", run.dump(2) + "\n");
  return summary;
}

}  // namespace guwen::datagen
