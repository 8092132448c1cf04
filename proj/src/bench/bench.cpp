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


#include "bench/bench.hpp"

#include <chrono>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>

#include "datagen/templates.hpp"
#include "formats/records.hpp"
#include "util/io.hpp"
#include "util/parallel.hpp"
#include "util/utf8.hpp"

namespace guwen::bench {
namespace {

using config::Json;

bool is_prf_task(Task task) { return task == Task::kPunctuation || task == Task::kPos || task == Task::kNer; }

bool is_bleu_task(Task task) { return task == Task::kTranslation || task == Task::kWordExplanation; }

std::string parse_item(std::string_view line, const formats::Resources& res, TaskItem& item) {
  if (line.empty()) return "blank line";
  if (!utf8::is_valid(line)) return "invalid UTF-8";
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const Json::parse_error&) {
    return "invalid JSON";
  }
  if (!obj.is_object()) return "not a JSON object";
  for (const char* k : {"id", "task", "instruction", "input", "gold"}) {
    if (!obj.contains(k)) return std::string("missing key \"") + k + "\"";
  }
  if (obj["id"].is_string()) {
    item.id = obj["id"].get<std::string>();
  } else if (obj["id"].is_number_integer()) {
    item.id = std::to_string(obj["id"].get<long long>());
  } else {
    return "id must be a string or integer";
  }
  if (item.id.empty()) return "empty id";
  if (!obj["task"].is_string()) return "task must be a string";
  const auto task = formats::task_from_string(obj["task"].get<std::string>());
  if (!task || *task == Task::kOther) return "unknown task \"" + obj["task"].get<std::string>() + "\"";
  item.task = *task;
  if (!obj["instruction"].is_string() || !obj["input"].is_string()) return "instruction and input must be strings";
  item.instruction = obj["instruction"].get<std::string>();
  item.input = obj["input"].get<std::string>();

  const auto& gold = obj["gold"];
  if (gold.is_string()) {
    item.gold = gold.get<std::string>();
  } else if (item.task == Task::kNer && gold.is_object()) {
    try {
      item.gold = formats::serialize_entities(formats::parse_entity_output(gold.dump(), res.aliases));
    } catch (const formats::FormatError& e) {
      return std::string("gold: ") + e.what();
    }
  } else {
    return "gold must be a string";
  }
  if (auto reason = formats::validate_output(item.task, item.input, item.gold, res)) return "gold: " + *reason;
  return {};
}

Json counts_json(const metrics::Counts& c) {
  return Json{{"tp", c.tp}, {"predicted", c.predicted}, {"gold", c.gold}};
}

Json prf_json(const metrics::PRF& prf) {
  auto out = counts_json(prf.counts);
  out["precision"] = prf.precision;
  out["recall"] = prf.recall;
  out["f1"] = prf.f1;
  return out;
}

metrics::Counts counts_from_json(const Json& obj) {
  return {obj.at("tp").get<std::uint64_t>(), obj.at("predicted").get<std::uint64_t>(),
          obj.at("gold").get<std::uint64_t>()};
}

template <typename T>
Json array_json(const T& values) {
  auto out = Json::array();
  for (const auto& v : values) out.push_back(v);
  return out;
}

Json item_to_json(const ItemResult& item) {
  Json out{{"id", item.id},
           {"task", formats::to_string(item.task)},
           {"answered", item.answered},
           {"extracted", item.extracted},
           {"scored", item.score.scored}};
  if (!item.score.note.empty()) out["note"] = item.score.note;
  const auto& s = item.score;
  if (is_prf_task(item.task)) {
    Json prf = counts_json(s.prf.counts);
    prf["vacuous"] = s.prf.vacuous;
    prf["base_mismatch"] = s.prf.base_mismatch;
    auto cats = Json::object();
    for (const auto& [name, c] : s.prf.per_category) cats[name] = counts_json(c);
    prf["categories"] = std::move(cats);
    out["prf"] = std::move(prf);
  } else if (is_bleu_task(item.task)) {
    out["bleu"] = Json{{"matches", array_json(s.bleu.matches)},
                       {"totals", array_json(s.bleu.totals)},
                       {"candidate_len", s.bleu.candidate_len},
                       {"reference_len", s.bleu.reference_len},
                       {"sentence", array_json(s.bleu_scores.bleu)}};
  } else {
    out["embed"] = Json{{"precision", s.embed.precision}, {"recall", s.embed.recall}, {"f1", s.embed.f1}};
  }
  out["headline"] = bench::headline(item.task, s);
  return out;
}

ItemResult item_from_json(const Json& obj) {
  ItemResult item;
  item.id = obj.at("id").get<std::string>();
  const auto task = formats::task_from_string(obj.at("task").get<std::string>());
  if (!task || *task == Task::kOther) throw BenchError("unknown task in item " + item.id);
  item.task = *task;
  item.answered = obj.at("answered").get<bool>();
  item.extracted = obj.at("extracted").get<bool>();
  auto& s = item.score;
  s.scored = obj.at("scored").get<bool>();
  if (obj.contains("note")) s.note = obj["note"].get<std::string>();
  if (is_prf_task(item.task)) {
    const auto& prf = obj.at("prf");
    s.prf.counts = counts_from_json(prf);
    s.prf.vacuous = prf.at("vacuous").get<bool>();
    s.prf.base_mismatch = prf.at("base_mismatch").get<bool>();
    for (const auto& [name, c] : prf.at("categories").items()) s.prf.per_category[name] = counts_from_json(c);
  } else if (is_bleu_task(item.task)) {
    const auto& bleu = obj.at("bleu");
    for (std::size_t k = 0; k < metrics::kMaxBleuOrder; ++k) {
      s.bleu.matches[k] = bleu.at("matches").at(k).get<std::uint64_t>();
      s.bleu.totals[k] = bleu.at("totals").at(k).get<std::uint64_t>();
    }
    s.bleu.candidate_len = bleu.at("candidate_len").get<std::uint64_t>();
    s.bleu.reference_len = bleu.at("reference_len").get<std::uint64_t>();
    s.bleu_scores = metrics::score_bleu(s.bleu, metrics::Smoothing::kAddOneOnZero);
  } else {
    const auto& embed = obj.at("embed");
    s.embed = {embed.at("precision").get<double>(), embed.at("recall").get<double>(), embed.at("f1").get<double>()};
  }
  return item;
}

Json optional_json(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

// Serializes calls into a provider that may not be thread-safe.
class LockedProvider : public metrics::EmbeddingProvider {
 public:
  explicit LockedProvider(metrics::EmbeddingProvider& inner) : inner_(inner) {}

  std::vector<metrics::TokenVectors> embed(std::span<const std::string> texts) override {
    std::lock_guard lock(mu_);
    return inner_.embed(texts);
  }

 private:
  metrics::EmbeddingProvider& inner_;
  std::mutex mu_;
};

}  // namespace

std::map<Task, std::size_t> BenchLoadResult::task_counts() const {
  std::map<Task, std::size_t> counts;
  for (const auto& item : items) ++counts[item.task];
  return counts;
}

BenchLoadResult parse_bench(std::string_view content, const formats::Resources& res) {
  BenchLoadResult out;
  std::unordered_map<std::string, std::size_t> seen;
  const auto lines = formats::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    TaskItem item;
    item.line = i + 1;
    std::string reason;
    try {
      reason = parse_item(lines[i], res, item);
    } catch (const std::exception& e) {
      reason = e.what();
    }
    if (reason.empty()) {
      auto [it, fresh] = seen.emplace(item.id, item.line);
      if (!fresh) reason = "duplicate id \"" + item.id + "\" (first on line " + std::to_string(it->second) + ")";
    }
    if (reason.empty()) {
      out.items.push_back(std::move(item));
    } else {
      out.malformed.push_back({i + 1, std::move(reason)});
    }
  }
  return out;
}

BenchLoadResult load_bench(const std::filesystem::path& path, const formats::Resources& res) {
  return parse_bench(io::read_file(path), res);
}

const std::map<Task, std::size_t>& official_counts() {
  static const std::map<Task, std::size_t> kCounts = {
      {Task::kPunctuation, 7559}, {Task::kPos, 1247},        {Task::kNer, 3741},
      {Task::kTranslation, 5013}, {Task::kWordExplanation, 3931}, {Task::kReverseDictionary, 4462},
  };
  return kCounts;
}

std::size_t official_total() { return 25953; }

std::vector<std::string> check_official_counts(const std::map<Task, std::size_t>& counts) {
  std::vector<std::string> out;
  std::size_t total = 0;
  for (const auto& [task, expected] : official_counts()) {
    const auto it = counts.find(task);
    const std::size_t got = it == counts.end() ? 0 : it->second;
    total += got;
    if (got != expected) {
      out.push_back(std::string(formats::to_string(task)) + ": " + std::to_string(got) + " items, expected " +
                    std::to_string(expected));
    }
  }
  if (total != official_total()) {
    out.push_back("total: " + std::to_string(total) + " items, expected " + std::to_string(official_total()));
  }
  return out;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string ResponseCache::key(std::string_view model, std::string_view item_id, std::string_view prompt) {
  std::string material;
  material.append(model).push_back('\0');
  material.append(item_id).push_back('\0');
  material.append(prompt);
  return io::sha256_hex(material);
}

std::filesystem::path ResponseCache::path_for(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  try {
    const auto obj = Json::parse(io::read_file(path));
    return obj.at("content").get<std::string>();
  } catch (const std::exception&) {
    return std::nullopt;  // a torn or foreign file is a miss
  }
}

void ResponseCache::put(const std::string& key, std::string_view model, std::string_view item_id,
                        std::string_view content) const {
  const Json obj{{"model", model}, {"id", item_id}, {"content", content}};
  io::write_file(path_for(key), obj.dump() + "\n");
}

std::string build_prompt(const TaskItem& item, std::string_view prompt_template) {
  return datagen::render(prompt_template, {{"instruction", item.instruction}, {"input", item.input}});
}

std::vector<ModelResponse> run_model(const std::vector<TaskItem>& items, clients::ChatClient& client,
                                     const RunOptions& options) {
  std::optional<ResponseCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir);
  const auto& settings = options.settings;
  const auto& cache_name = options.cache_name.empty() ? settings.model : options.cache_name;
  std::vector<ModelResponse> out(items.size());
  parallel_for(items.size(), settings.parallelism, [&](std::size_t i) {
    const auto& item = items[i];
    auto& r = out[i];
    r.id = item.id;
    const auto prompt = build_prompt(item, options.prompt_template);
    const auto key = ResponseCache::key(cache_name, item.id, prompt);
    if (cache) {
      if (auto hit = cache->get(key)) {
        r.content = std::move(hit);
        r.cached = true;
        return;
      }
    }
    auto counting = [&](std::chrono::milliseconds d) {
      ++r.retries;
      if (options.sleeper) options.sleeper(d);
    };
    const auto request = clients::user_request(settings.model, prompt, settings.temperature, settings.max_tokens);
    const auto start = std::chrono::steady_clock::now();
    try {
      r.content = clients::complete_with_retry(client, request, settings.retry, counting);
    } catch (const clients::ClientError& e) {
      r.error = e.what();
    }
    r.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (cache && r.content) cache->put(key, cache_name, item.id, *r.content);
  });
  return out;
}

std::string format_response_log(const std::vector<ModelResponse>& responses) {
  std::string out;
  for (const auto& r : responses) {
    Json line{{"id", r.id},
              {"answered", r.content.has_value()},
              {"cached", r.cached},
              {"retries", r.retries},
              {"latency_ms", r.latency_ms}};
    if (!r.error.empty()) line["error"] = r.error;
    out += line.dump();
    out += '\n';
  }
  return out;
}

EvalRun evaluate(std::string model, const std::vector<TaskItem>& items, const std::vector<ModelResponse>& responses,
                 const formats::Resources& res, const EvalOptions& options, metrics::EmbeddingProvider* embedder) {
  std::unordered_map<std::string_view, const ModelResponse*> by_id;
  for (const auto& r : responses) by_id.emplace(r.id, &r);

  std::optional<LockedProvider> locked;
  if (embedder) locked.emplace(*embedder);
  metrics::EmbeddingProvider* provider = locked ? &*locked : nullptr;

  EvalRun run;
  run.model = std::move(model);
  run.items.resize(items.size());
  parallel_for(items.size(), options.threads, [&](std::size_t i) {
    const auto& item = items[i];
    auto& result = run.items[i];
    result.id = item.id;
    result.task = item.task;
    const auto it = by_id.find(item.id);
    const ModelResponse* response = it == by_id.end() ? nullptr : it->second;
    Prediction pred;
    pred.task = item.task;
    result.answered = response && response->content;
    if (result.answered) pred = extract_answer(item.task, *response->content, options.extract, res);
    result.extracted = pred.extracted;
    try {
      result.score = score_item(item.task, item.gold, pred, res, options.score, provider);
    } catch (const std::exception& e) {
      result.score = {};
      result.score.scored = false;
      result.score.note = e.what();
    }
  });
  run.aggregates = compute_aggregates(run.items);
  return run;
}

std::map<Task, TaskAggregate> compute_aggregates(const std::vector<ItemResult>& items) {
  std::map<Task, std::vector<const ItemResult*>> by_task;
  for (const auto& item : items) by_task[item.task].push_back(&item);

  std::map<Task, TaskAggregate> out;
  for (const auto& [task, group] : by_task) {
    auto& agg = out[task];
    std::vector<metrics::PrfResult> prf;
    std::vector<metrics::BleuStats> bleu;
    std::vector<metrics::EmbedScore> embed;
    for (const auto* item : group) {
      ++agg.items;
      if (!item->answered) ++agg.unanswered;
      if (!item->extracted) ++agg.unextracted;
      if (!item->score.scored) {
        ++agg.unscored;
        continue;
      }
      if (item->extracted && item->score.prf.base_mismatch) ++agg.base_mismatch;
      if (is_prf_task(task)) {
        prf.push_back(item->score.prf);
      } else if (is_bleu_task(task)) {
        bleu.push_back(item->score.bleu);
      } else {
        embed.push_back(item->score.embed);
      }
    }
    if (!prf.empty()) agg.prf = metrics::aggregate(std::span<const metrics::PrfResult>(prf));
    if (!bleu.empty()) agg.bleu = metrics::aggregate(std::span<const metrics::BleuStats>(bleu));
    if (!embed.empty()) agg.embed = metrics::aggregate(std::span<const metrics::EmbedScore>(embed));
  }
  return out;
}

std::optional<double> headline(Task task, const TaskAggregate& agg) {
  if (is_prf_task(task)) {
    if (agg.prf.items == 0) return std::nullopt;
    return agg.prf.micro().f1;
  }
  if (is_bleu_task(task)) {
    if (agg.bleu.items == 0) return std::nullopt;
    return agg.bleu.corpus().bleu[0];
  }
  if (agg.embed.items == 0) return std::nullopt;
  return agg.embed.mean().f1;
}

Json aggregates_to_json(const std::map<Task, TaskAggregate>& aggregates) {
  auto out = Json::object();
  for (const auto& [task, agg] : aggregates) {
    Json a{{"items", agg.items},
           {"unanswered", agg.unanswered},
           {"unextracted", agg.unextracted},
           {"unscored", agg.unscored},
           {"base_mismatch", agg.base_mismatch},
           {"headline", optional_json(headline(task, agg))}};
    if (is_prf_task(task)) {
      auto prf = prf_json(agg.prf.micro());
      prf["scored"] = agg.prf.items;
      auto cats = Json::object();
      for (const auto& [name, score] : agg.prf.per_category()) cats[name] = prf_json(score);
      prf["categories"] = std::move(cats);
      a["prf"] = std::move(prf);
    } else if (is_bleu_task(task)) {
      const auto corpus = agg.bleu.corpus();
      a["bleu"] = Json{{"scored", agg.bleu.items},
                       {"corpus", array_json(corpus.bleu)},
                       {"brevity_penalty", corpus.brevity_penalty},
                       {"sentence_mean", array_json(agg.bleu.sentence_mean())},
                       {"matches", array_json(agg.bleu.pooled.matches)},
                       {"totals", array_json(agg.bleu.pooled.totals)},
                       {"candidate_len", agg.bleu.pooled.candidate_len},
                       {"reference_len", agg.bleu.pooled.reference_len}};
    } else {
      const auto mean = agg.embed.mean();
      a["embed"] = Json{{"scored", agg.embed.items},
                        {"precision", mean.precision},
                        {"recall", mean.recall},
                        {"f1", mean.f1}};
    }
    out[std::string(formats::to_string(task))] = std::move(a);
  }
  return out;
}

Json eval_run_to_json(const EvalRun& run) {
  std::size_t unanswered = 0, unextracted = 0, unscored = 0, base_mismatch = 0;
  auto per_task = Json::object();
  for (const auto& [task, agg] : run.aggregates) {
    per_task[std::string(formats::to_string(task))] = agg.items;
    unanswered += agg.unanswered;
    unextracted += agg.unextracted;
    unscored += agg.unscored;
    base_mismatch += agg.base_mismatch;
  }
  auto items = Json::array();
  for (const auto& item : run.items) items.push_back(item_to_json(item));
  return Json{{"model", run.model},
              {"seed", run.seed},
              {"config", run.config},
              {"counts", Json{{"items", run.items.size()}, {"per_task", std::move(per_task)}}},
              {"flags", Json{{"unanswered", unanswered},
                             {"unextracted", unextracted},
                             {"unscored", unscored},
                             {"base_mismatch", base_mismatch}}},
              {"items", std::move(items)},
              {"aggregates", aggregates_to_json(run.aggregates)}};
}

EvalRun eval_run_from_json(const Json& obj) {
  EvalRun run;
  try {
    run.model = obj.at("model").get<std::string>();
    run.seed = obj.at("seed").get<std::uint64_t>();
    if (obj.contains("config")) run.config = obj["config"];
    for (const auto& item : obj.at("items")) run.items.push_back(item_from_json(item));
    if (obj.at("counts").at("items").get<std::size_t>() != run.items.size()) {
      throw BenchError("item count does not match the items array");
    }
  } catch (const Json::exception& e) {
    throw BenchError(std::string("malformed eval run: ") + e.what());
  }
  run.aggregates = compute_aggregates(run.items);
  return run;
}

std::string format_eval_run(const EvalRun& run) { return eval_run_to_json(run).dump(2) + "\n"; }

EvalRun read_eval_run(const std::filesystem::path& path) {
  Json obj;
  try {
    obj = Json::parse(io::read_file(path));
  } catch (const Json::parse_error& e) {
    throw BenchError(path.string() + ": " + e.what());
  }
  return eval_run_from_json(obj);
}

bool aggregates_consistent(const Json& stored_run) {
  const auto run = eval_run_from_json(stored_run);
  return stored_run.contains("aggregates") && aggregates_to_json(run.aggregates) == stored_run["aggregates"];
}

}  // namespace guwen::bench
