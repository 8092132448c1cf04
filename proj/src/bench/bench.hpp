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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bench/answer.hpp"
#include "clients/chat.hpp"
#include "clients/factory.hpp"
#include "formats/task.hpp"
#include "metrics/aggregate.hpp"
#include "util/config.hpp"

namespace guwen::bench {

using formats::Task;

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaskItem {
  std::string id;
  Task task = Task::kOther;
  std::string instruction;
  std::string input;
  std::string gold;  // NER gold objects are stored in canonical listing form
  std::size_t line = 0;
};

struct MalformedItem {
  std::size_t line = 0;
  std::string reason;
};

struct BenchLoadResult {
  std::vector<TaskItem> items;
  std::vector<MalformedItem> malformed;

  std::map<Task, std::size_t> task_counts() const;
};

// One JSON object per line: id, task, instruction, input, gold. Ids must be
// unique and gold must be a valid answer for the input.
BenchLoadResult parse_bench(std::string_view content, const formats::Resources& res = formats::Resources::defaults());
BenchLoadResult load_bench(const std::filesystem::path& path,
                           const formats::Resources& res = formats::Resources::defaults());

// Item counts of the official split, per task.
const std::map<Task, std::size_t>& official_counts();
std::size_t official_total();

// One line per task whose count differs from the official split.
std::vector<std::string> check_official_counts(const std::map<Task, std::size_t>& counts);

// Responses on disk under <dir>/<xx>/<key>.json, one file per key.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  static std::string key(std::string_view model, std::string_view item_id, std::string_view prompt);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, std::string_view model, std::string_view item_id, std::string_view content) const;

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
};

inline constexpr std::string_view kDefaultPrompt = "{instruction}\n{input}";

struct RunOptions {
  clients::ModelSettings settings;
  std::string prompt_template{kDefaultPrompt};
  std::optional<std::filesystem::path> cache_dir;
  // Cache key prefix; the request model when empty. Two entries that share
  // an upstream model id still get separate caches.
  std::string cache_name;
  clients::Sleeper sleeper = clients::real_sleeper();
};

struct ModelResponse {
  std::string id;
  std::optional<std::string> content;  // nullopt: unanswered
  bool cached = false;
  int retries = 0;
  double latency_ms = 0;
  std::string error;
};

std::string build_prompt(const TaskItem& item, std::string_view prompt_template);

// One response per item, in item order. Cached answers are reused without a
// call; failures are never cached.
std::vector<ModelResponse> run_model(const std::vector<TaskItem>& items, clients::ChatClient& client,
                                     const RunOptions& options);

// responses.jsonl: id, cached, retries, latency_ms, answered, error.
std::string format_response_log(const std::vector<ModelResponse>& responses);

struct ItemResult {
  std::string id;
  Task task = Task::kOther;
  bool answered = true;
  bool extracted = true;
  ItemScore score;
};

struct TaskAggregate {
  std::size_t items = 0;
  std::size_t unanswered = 0;
  std::size_t unextracted = 0;
  std::size_t unscored = 0;
  std::size_t base_mismatch = 0;
  metrics::PrfReport prf;
  metrics::BleuReport bleu;
  metrics::EmbedReport embed;  // scored items only
};

struct EvalRun {
  std::string model;
  std::uint64_t seed = 0;
  config::Json config = config::Json::object();
  std::vector<ItemResult> items;
  std::map<Task, TaskAggregate> aggregates;
};

struct EvalOptions {
  ExtractOptions extract;
  ScoreOptions score;
  std::size_t threads = 1;
};

// Responses must be aligned with items by id. Unanswered and unextractable
// items are scored as empty predictions.
EvalRun evaluate(std::string model, const std::vector<TaskItem>& items, const std::vector<ModelResponse>& responses,
                 const formats::Resources& res, const EvalOptions& options,
                 metrics::EmbeddingProvider* embedder = nullptr);

std::map<Task, TaskAggregate> compute_aggregates(const std::vector<ItemResult>& items);

// The radar value: micro F1, corpus BLEU-1 or mean embed F1.
std::optional<double> headline(Task task, const TaskAggregate& agg);

config::Json eval_run_to_json(const EvalRun& run);
config::Json aggregates_to_json(const std::map<Task, TaskAggregate>& aggregates);
// Reads per-item results and recomputes the aggregates from them.
EvalRun eval_run_from_json(const config::Json& obj);
std::string format_eval_run(const EvalRun& run);
EvalRun read_eval_run(const std::filesystem::path& path);

// True when the stored aggregates equal those recomputed from the items.
bool aggregates_consistent(const config::Json& stored_run);

}  // namespace guwen::bench
