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


#include "datagen/datagen.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "formats/error.hpp"
#include "textnorm/punct.hpp"
#include "util/io.hpp"
#include "util/rng.hpp"
#include "util/utf8.hpp"

namespace guwen::datagen {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool mentions(const std::string& lowered, std::initializer_list<std::string_view> cues) {
  return std::any_of(cues.begin(), cues.end(), [&](std::string_view c) { return lowered.find(c) != std::string::npos; });
}

// Cue words per task, matched against the lowercased instruction.
bool mentions_task(const std::string& t, Task task) {
  switch (task) {
    case Task::kPunctuation:
      return mentions(t, {"punctuat", "标点", "断句"});
    case Task::kPos:
      return mentions(t, {"part of speech", "part-of-speech", "词性"});
    case Task::kNer:
      return mentions(t, {"named entit", "entity", "entities", "实体"});
    case Task::kTranslation:
      return mentions(t, {"translat", "翻译", "译成", "译为"});
    default:
      return false;
  }
}

bool has_ner_schema(const std::string& t) {
  const bool people = mentions(t, {"character", "person", "people", "name", "人物", "人名"});
  const bool place = mentions(t, {"place", "location", "geograph", "地点", "地名"});
  const bool time = mentions(t, {"time", "date", "year", "dynast", "时间"});
  const bool official = mentions(t, {"official", "office", "title", "官职", "职官"});
  const bool format = mentions(t, {"format", "json", "[", "{", "格式"});
  return people && place && time && official && format;
}

bool has_schema(const std::string& t, Task task) {
  switch (task) {
    case Task::kPunctuation:
      return mentions_task(t, Task::kPunctuation);
    case Task::kPos:
      return mentions_task(t, Task::kPos) && mentions(t, {"/", "format", "格式"});
    case Task::kNer:
      return has_ner_schema(t);
    default:
      return true;
  }
}

// An inline output example in the instruction must itself parse.
bool inline_example_parses(const std::string& text, Task task, const formats::Resources& res) {
  if (task == Task::kNer) {
    if (text.find('[') == std::string::npos && text.find('{') == std::string::npos) return true;
    try {
      formats::parse_entity_output(text, res.aliases);
      return true;
    } catch (const formats::FormatError&) {
      return false;
    }
  }
  if (task == Task::kPos) {
    std::istringstream words(text);
    std::string word;
    while (words >> word) {
      const auto slash = word.rfind('/');
      if (slash == std::string::npos || slash == 0) continue;
      const auto segment = word.substr(0, slash);
      if (std::all_of(segment.begin(), segment.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; })) {
        continue;
      }
      auto tag = word.substr(slash + 1);
      while (!tag.empty() && !std::isalpha(static_cast<unsigned char>(tag.back()))) tag.pop_back();
      if (!formats::pos_tag_from_code(tag)) return false;
    }
  }
  return true;
}

bool only_dots(std::string_view s) {
  const auto cps = utf8::decode(s);
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), [](char32_t c) { return c == U'.' || c == U'…' || c == U'。'; });
}

std::string unwrap_quotes(std::string s) {
  static const std::vector<std::pair<std::string, std::string>> kPairs = {{"\"", "\""}, {"“", "”"}, {"「", "」"}};
  for (const auto& [open, close] : kPairs) {
    if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
      return std::string(trim(s.substr(open.size(), s.size() - open.size() - close.size())));
    }
  }
  // A closing quote left over from a quoted block around the whole list.
  if (s.ends_with('"') && std::count(s.begin(), s.end(), '"') % 2 == 1) s = std::string(trim(s.substr(0, s.size() - 1)));
  return s;
}

std::vector<clients::ChatOutcome> run_requests(clients::ChatClient& client, const std::vector<std::string>& prompts,
                                               const GenerationSettings& settings) {
  std::vector<clients::ChatRequest> requests;
  requests.reserve(prompts.size());
  for (const auto& p : prompts) {
    requests.push_back(
        clients::user_request(settings.model.model, p, settings.model.temperature, settings.model.max_tokens));
  }
  return clients::complete_all(client, requests, settings.model.parallelism, settings.model.retry, settings.sleeper);
}

void collect_candidates(const std::vector<clients::ChatOutcome>& outcomes, const std::vector<std::string>& parents,
                        const std::vector<Task>& tasks, Origin origin, const std::string& id_prefix,
                        std::vector<std::string>& log, std::vector<InstructionCandidate>& out) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& parent = parents[i];
    if (!outcomes[i].content) {
      log.push_back(parent + ": client error: " + outcomes[i].error);
      continue;
    }
    if (trim(*outcomes[i].content).empty()) {
      log.push_back(parent + ": empty response");
      continue;
    }
    const auto items = parse_numbered_list(*outcomes[i].content);
    if (items.empty()) {
      log.push_back(parent + ": no numbered instructions in response");
      continue;
    }
    std::size_t n = 0;
    for (const auto& text : items) {
      ++n;
      if (!seen.insert(text).second) continue;
      out.push_back({id_prefix + parent + "/" + std::to_string(n), text, tasks[i], origin, parent, Status::kPending, {}});
    }
  }
}

}  // namespace

PairBuildResult build_pairs(const std::vector<corpus::RawDocument>& records, Task task, const formats::Resources& res) {
  PairBuildResult out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& doc = records[i];
    auto id_it = doc.meta.find("id");
    const auto id = id_it != doc.meta.end() ? id_it->second : doc.source_id + ":" + std::to_string(i + 1);
    IOPair pair{id, {}, {}, task, doc.source_id};
    const auto text = std::string(trim(doc.text));
    try {
      switch (task) {
        case Task::kPunctuation: {
          auto ann = textnorm::strip_punctuation(text, res.inventory);
          if (ann.marks.empty()) throw formats::FormatError(formats::FormatErrorKind::kNoStructureFound, text, "no punctuation marks");
          pair.input = ann.base_text;
          pair.output = text;
          break;
        }
        case Task::kPos: {
          auto seq = formats::parse_slash_tags(text);
          pair.input = formats::join_segments(seq);
          pair.output = formats::serialize_slash_tags(seq);
          break;
        }
        default: {
          pair.input = text;
          for (const char* key : {"output", "translation", "answer"}) {
            if (auto it = doc.meta.find(key); it != doc.meta.end()) {
              pair.output = std::string(trim(it->second));
              break;
            }
          }
          if (task == Task::kNer && !pair.output.empty()) {
            pair.output = formats::serialize_entities(formats::parse_entity_output(pair.output, res.aliases));
          }
          break;
        }
      }
    } catch (const formats::FormatError& e) {
      out.issues.push_back({id, e.what()});
      continue;
    }
    if (pair.input.empty() || pair.output.empty()) {
      out.issues.push_back({id, pair.input.empty() ? "empty input" : "missing output"});
      continue;
    }
    if (auto reason = formats::validate_output(task, pair.input, pair.output, res)) {
      out.issues.push_back({id, *reason});
      continue;
    }
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::kManual:
      return "manual";
    case Origin::kExpanded:
      return "expanded";
    case Origin::kReverse:
      return "reverse";
  }
  return "manual";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kPending:
      return "pending";
    case Status::kAccepted:
      return "accepted";
    case Status::kRejected:
      return "rejected";
  }
  return "pending";
}

std::vector<std::string> parse_numbered_list(std::string_view response) {
  static const std::regex kItem(R"(^\s*(?:\*\*)?\d{1,3}\s*(?:\.|、|\)|）|:|：)\s*(.*)$)");
  std::vector<std::string> items;
  bool open = false;
  for (auto raw : formats::split_lines(response)) {
    const std::string line(trim(raw));
    std::smatch m;
    if (std::regex_match(line, m, kItem)) {
      items.push_back(std::string(trim(m[1].str())));
      open = true;
    } else if (line.empty() || only_dots(line)) {
      open = false;
    } else if (open) {
      if (!items.back().empty()) items.back() += ' ';
      items.back() += line;
    }
  }
  std::vector<std::string> out;
  for (auto& item : items) {
    auto text = unwrap_quotes(std::move(item));
    if (!text.empty()) out.push_back(std::move(text));
  }
  return out;
}

std::vector<InstructionCandidate> expand_instructions(const std::vector<InstructionCandidate>& seeds,
                                                      clients::ChatClient& client, const GenerationSettings& settings,
                                                      const TemplateSet& templates, std::vector<std::string>& log) {
  std::vector<std::string> prompts, parents;
  std::vector<Task> tasks;
  for (const auto& seed : seeds) {
    prompts.push_back(render(templates.expand(seed.task),
                             {{"instruction", seed.text}, {"task_description", task_description(seed.task)}}));
    parents.push_back(seed.id);
    tasks.push_back(seed.task);
  }
  std::vector<InstructionCandidate> out;
  collect_candidates(run_requests(client, prompts, settings), parents, tasks, Origin::kExpanded, "", log, out);
  return out;
}

std::vector<InstructionCandidate> reverse_reason(const std::vector<IOPair>& pairs, clients::ChatClient& client,
                                                 const GenerationSettings& settings, const TemplateSet& templates,
                                                 std::vector<std::string>& log) {
  if (pairs.empty()) throw DatagenError("reverse reasoning needs at least one input-output pair");
  std::vector<std::string> prompts, parents;
  std::vector<Task> tasks;
  for (const auto& pair : pairs) {
    prompts.push_back(render(templates.reverse(pair.task), {{"input", pair.input},
                                                             {"output", pair.output},
                                                             {"task_description", task_description(pair.task)}}));
    parents.push_back(pair.id);
    tasks.push_back(pair.task);
  }
  std::vector<InstructionCandidate> out;
  collect_candidates(run_requests(client, prompts, settings), parents, tasks, Origin::kReverse, "rev:", log, out);
  return out;
}

std::optional<std::string> check_candidate(const InstructionCandidate& candidate, const FilterOptions& opts,
                                           const formats::Resources& res) {
  const auto text = std::string(trim(candidate.text));
  if (text.empty()) return "empty";
  const auto length = utf8::length(text);
  if (length < opts.min_length) return "too-short";
  if (length > opts.max_length) return "too-long";
  const auto lowered = lower_ascii(text);
  for (auto other : {Task::kPunctuation, Task::kPos, Task::kNer, Task::kTranslation}) {
    if (other != candidate.task && mentions_task(lowered, other)) return "multi-task";
  }
  if (formats::is_structured(candidate.task) && !has_schema(lowered, candidate.task)) return "no-structured-schema";
  if (!inline_example_parses(text, candidate.task, res)) return "format-mismatch";
  return std::nullopt;
}

ManualDecisions parse_manual_decisions(std::string_view text) {
  ManualDecisions out;
  std::size_t n = 0;
  for (auto raw : formats::split_lines(text)) {
    ++n;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const auto verdict = tab == std::string_view::npos ? std::string_view{} : trim(line.substr(tab + 1));
    if (verdict != "accept" && verdict != "reject") {
      throw DatagenError("manual decisions line " + std::to_string(n) + ": expected id<TAB>accept|reject");
    }
    out[std::string(trim(line.substr(0, tab)))] = verdict == "accept";
  }
  return out;
}

FilterResult filter_candidates(std::vector<InstructionCandidate> candidates, const FilterOptions& opts,
                               const ManualDecisions& manual, const formats::Resources& res) {
  FilterResult out;
  for (auto& c : candidates) {
    auto reason = check_candidate(c, opts, res);
    if (!reason) {
      auto it = manual.find(c.id);
      if (it != manual.end() && !it->second) reason = "manual";
    }
    if (reason) {
      c.status = Status::kRejected;
      c.reason = *reason;
      out.rejected.push_back(std::move(c));
    } else {
      c.status = Status::kAccepted;
      c.reason.clear();
      out.accepted.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<PilotScore> pilot_test(const std::vector<InstructionCandidate>& accepted, const std::vector<IOPair>& pairs,
                                   clients::ChatClient& client, const GenerationSettings& settings,
                                   const TemplateSet& templates, const PilotOptions& opts,
                                   const formats::Resources& res, metrics::EmbeddingProvider* embedder) {
  std::map<Task, std::vector<IOPair>> samples;
  for (const auto& c : accepted) {
    if (samples.count(c.task)) continue;
    std::vector<IOPair> of_task;
    for (const auto& p : pairs) {
      if (p.task == c.task) of_task.push_back(p);
    }
    SeededRng rng(opts.seed + static_cast<std::uint64_t>(c.task));
    samples[c.task] = rng.sample(of_task, opts.sample_size);
  }

  std::vector<std::string> prompts;
  std::vector<std::pair<std::size_t, const IOPair*>> owners;
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    for (const auto& pair : samples[accepted[i].task]) {
      prompts.push_back(render(templates.get("answer"), {{"instruction", accepted[i].text}, {"input", pair.input}}));
      owners.emplace_back(i, &pair);
    }
  }
  const auto outcomes = run_requests(client, prompts, settings);

  std::vector<PilotScore> scores;
  std::vector<double> sums(accepted.size(), 0.0);
  for (const auto& c : accepted) scores.push_back({c.id, c.text, c.task, 0, 0, 0});
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto [i, pair] = owners[k];
    auto& s = scores[i];
    if (!outcomes[k].content) {
      ++s.unscored;
      continue;
    }
    const auto pred = bench::extract_answer(s.task, *outcomes[k].content, {}, res);
    const auto item = bench::score_item(s.task, pair->output, pred, res, {}, embedder);
    if (!item.scored) {
      ++s.unscored;
      continue;
    }
    ++s.scored;
    sums[i] += bench::headline(s.task, item);
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].scored) scores[i].mean = sums[i] / static_cast<double>(scores[i].scored);
  }
  std::stable_sort(scores.begin(), scores.end(), [](const PilotScore& a, const PilotScore& b) { return a.mean > b.mean; });
  return scores;
}

GenerateResult generate_answers(const std::vector<InstructionCandidate>& instructions,
                                const std::vector<IOPair>& inputs, clients::ChatClient& client,
                                const GenerationSettings& settings, const TemplateSet& templates,
                                const formats::Resources& res) {
  std::vector<std::string> prompts;
  std::vector<InstructionRecord> drafts;
  for (const auto& instruction : instructions) {
    for (const auto& pair : inputs) {
      if (pair.task != instruction.task) continue;
      prompts.push_back(render(templates.get("answer"), {{"instruction", instruction.text}, {"input", pair.input}}));
      drafts.push_back({instruction.text, pair.input, {}, pair.task, pair.source, formats::Stage::kGenerated});
    }
  }
  const auto outcomes = run_requests(client, prompts, settings);

  GenerateResult out;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    auto record = std::move(drafts[k]);
    if (!outcomes[k].content) {
      out.rejects.push_back({std::move(record), "client error: " + outcomes[k].error});
      continue;
    }
    record.output = std::string(trim(*outcomes[k].content));
    const auto pred = bench::extract_answer(record.task, *outcomes[k].content, {}, res);
    if (!pred.extracted) {
      out.rejects.push_back({std::move(record), "no answer in the task format"});
      continue;
    }
    switch (record.task) {
      case Task::kPos:
        record.output = formats::serialize_slash_tags(pred.tags);
        break;
      case Task::kNer:
        record.output = formats::serialize_entities(pred.entities);
        break;
      default:
        record.output = pred.text;
        break;
    }
    if (auto reason = formats::validate_output(record.task, record.input, record.output, res)) {
      out.rejects.push_back({std::move(record), *reason});
      continue;
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

std::string format_dataset_stats(const DatasetStats& stats) {
  std::ostringstream out;
  out << "kind\tname\tcount\n";
  for (const auto& [task, n] : stats.per_task) out << "task\t" << task << '\t' << n << '\n';
  for (const auto& [source, n] : stats.per_source) out << "source\t" << source << '\t' << n << '\n';
  out << "total\t\t" << stats.total << '\n';
  return out.str();
}

IntegrateResult integrate(const std::vector<std::vector<InstructionRecord>>& sets, const formats::Resources& res) {
  IntegrateResult out;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t j = 0; j < sets[s].size(); ++j) {
      auto record = sets[s][j];
      if (auto reason = formats::validate_output(record.task, record.input, record.output, res)) {
        throw IntegrationError(std::to_string(s + 1) + ":" + std::to_string(j + 1), *reason);
      }
      if (!seen.emplace(record.instruction, record.input).second) {
        ++out.duplicates;
        continue;
      }
      record.stage = formats::Stage::kIntegrated;
      ++out.stats.per_task[std::string(formats::to_string(record.task))];
      ++out.stats.per_source[record.source.empty() ? "unknown" : record.source];
      ++out.stats.total;
      out.records.push_back(std::move(record));
    }
  }
  return out;
}

std::optional<TrainingStage> training_stage_from_string(std::string_view name) {
  if (name == "pretrain") return TrainingStage::kPretrain;
  if (name == "sft") return TrainingStage::kSft;
  return std::nullopt;
}

std::string training_config_text(TrainingStage stage) {
  const bool pretrain = stage == TrainingStage::kPretrain;
  std::string out;
  out += "per_device_train_batch_size=" + std::string(pretrain ? "16" : "8") + "\n";
  out += "gradient_accumulation_steps=" + std::string(pretrain ? "1" : "2") + "\n";
  out += "learning_rate=1.0e-4\n";
  out += "num_train_epochs=1\n";
  out += "lr_scheduler_type=cosine\n";
  out += "warmup_ratio=0.1\n";
  return out;
}

void export_training_config(TrainingStage stage, const std::filesystem::path& path) {
  io::write_file(path, training_config_text(stage));
}

}  // namespace guwen::datagen
