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


#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bench/bench.hpp"
#include "bench/pipeline.hpp"
#include "bench/report.hpp"
#include "support/gen.hpp"
#include "support/scripted_client.hpp"
#include "support/tempdir.hpp"
#include "util/io.hpp"

using namespace guwen;
using namespace guwen::bench;
using testing::ScriptedChatClient;
using testing::TempDir;

namespace {

namespace fs = std::filesystem;

constexpr const char* kGold = "四年/t 春/n ，/w 衞州吁/nr 弑/v 桓公/nr 而/c 立/v 。/w";
constexpr const char* kDeepseek = "四/m 年/t 春/t ，/w 衞/ns 州吁/nr 弑/v 桓公/nr 而/c 立/v 。/w";
constexpr const char* kSentence = "四年春，衞州吁弑桓公而立。";

const fs::path kBenchData = fs::path(GUWEN_TEST_DATA) / "bench";

std::string item_line(const std::string& id, const std::string& task, const std::string& input,
                      const std::string& gold) {
  return config::Json{{"id", id}, {"task", task}, {"instruction", "做题"}, {"input", input}, {"gold", gold}}.dump();
}

TaskItem item(std::string id, Task task, std::string input, std::string gold) {
  TaskItem it;
  it.id = std::move(id);
  it.task = task;
  it.instruction = "做题";
  it.input = std::move(input);
  it.gold = std::move(gold);
  return it;
}

ModelResponse answer(const std::string& id, std::string content) {
  ModelResponse r;
  r.id = id;
  r.content = std::move(content);
  return r;
}

RunOptions options_with_cache(const fs::path& dir) {
  RunOptions opts;
  opts.settings.model = "mock";
  opts.cache_dir = dir;
  opts.sleeper = [](std::chrono::milliseconds) {};
  return opts;
}

EvalConfig fixture_config(const fs::path& cache) {
  auto cfg = eval_config_from_json(config::load(kBenchData / "eval.json"), kBenchData);
  cfg.cache_dir = cache;
  return cfg;
}

}  // namespace

TEST_CASE("load_bench accepts valid items") {
  const auto text = item_line("a", "pos", kSentence, kGold) + "\n" +
                    item_line("b", "punctuation", "天成初移镇许州", "天成初，移镇许州。") + "\n" +
                    item_line("c", "translation", "春眠不觉晓", "春天睡觉不知天亮") + "\n";
  const auto loaded = parse_bench(text);
  CHECK(loaded.malformed.empty());
  REQUIRE(loaded.items.size() == 3);
  CHECK(loaded.items[1].task == Task::kPunctuation);
  CHECK(loaded.items[2].line == 3);
  CHECK(loaded.task_counts().at(Task::kPos) == 1);
}

TEST_CASE("load_bench reports malformed items by line") {
  const auto text = item_line("a", "pos", kSentence, kGold) + "\n" +
                    item_line("b", "pos", "四年", "四/m 年/zz") + "\n" +     // 18th tag
                    item_line("a", "pos", kSentence, kGold) + "\n" +         // duplicate id
                    item_line("d", "summary", "x", "y") + "\n" +             // unknown task
                    "\n" +                                                  // blank
                    "{\"id\": \"f\"}\n" +                                   // missing keys
                    item_line("g", "punctuation", "天成初移镇", "天成初移镇") + "\n";  // no marks
  const auto loaded = parse_bench(text);
  CHECK(loaded.items.size() == 1);
  REQUIRE(loaded.malformed.size() == 6);
  std::vector<std::size_t> lines;
  for (const auto& m : loaded.malformed) lines.push_back(m.line);
  CHECK(lines == std::vector<std::size_t>{2, 3, 4, 5, 6, 7});
  CHECK(loaded.malformed[1].reason.find("duplicate id") != std::string::npos);
  CHECK(loaded.malformed[2].reason.find("unknown task") != std::string::npos);
}

TEST_CASE("NER gold objects are stored in listing form") {
  const auto loaded = parse_bench(io::read_file(kBenchData / "items.jsonl"));
  REQUIRE(loaded.malformed.empty());
  REQUIRE(loaded.items.size() == 6);
  const auto& ner = loaded.items[2];
  CHECK(ner.task == Task::kNer);
  CHECK(formats::parse_entity_output(ner.gold)[formats::EntityCategory::kPlace] == std::vector<std::string>{"许州"});
}

TEST_CASE("official counts check") {
  CHECK(official_counts().at(Task::kPunctuation) == 7559);
  std::size_t sum = 0;
  for (const auto& [task, n] : official_counts()) sum += n;
  CHECK(sum == official_total());
  CHECK(check_official_counts(official_counts()).empty());
  auto off = official_counts();
  off[Task::kNer] -= 1;
  const auto problems = check_official_counts(off);
  REQUIRE(problems.size() == 2);
  CHECK(problems[0] == "ner: 3740 items, expected 3741");
}

TEST_CASE("run_model caches responses and a rerun makes no calls") {
  TempDir tmp;
  const std::vector<TaskItem> items = {item("p1", Task::kPos, kSentence, kGold),
                                       item("t1", Task::kTranslation, "春眠不觉晓", "春天")};
  clients::MockChatClient first;
  const auto cold = run_model(items, first, options_with_cache(tmp.path()));
  CHECK(first.calls() == 2);
  REQUIRE(cold.size() == 2);
  CHECK_FALSE(cold[0].cached);
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp.path())) files += e.is_regular_file() ? 1 : 0;
  CHECK(files == 2);

  clients::MockChatClient second;
  const auto warm = run_model(items, second, options_with_cache(tmp.path()));
  CHECK(second.calls() == 0);
  CHECK(warm[0].cached);
  CHECK(warm[1].cached);
  CHECK(warm[0].content == cold[0].content);
  CHECK(warm[1].content == cold[1].content);
}

TEST_CASE("cache keys depend on model and prompt") {
  CHECK(ResponseCache::key("a", "1", "p") != ResponseCache::key("b", "1", "p"));
  CHECK(ResponseCache::key("a", "1", "p") != ResponseCache::key("a", "1", "q"));
  CHECK(ResponseCache::key("a", "1", "p") != ResponseCache::key("a", "1p", ""));
}

TEST_CASE("a rate limit then success counts one retry") {
  ScriptedChatClient client({ScriptedChatClient::Fail{true, std::chrono::milliseconds(2000)}, std::string("答案")});
  std::vector<std::chrono::milliseconds> waits;
  RunOptions opts;
  opts.settings.model = "m";
  opts.sleeper = [&](std::chrono::milliseconds d) { waits.push_back(d); };
  const auto out = run_model({item("x", Task::kTranslation, "甲", "乙")}, client, opts);
  REQUIRE(out.size() == 1);
  CHECK(out[0].content == "答案");
  CHECK(out[0].retries == 1);
  CHECK(waits == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(2000)});
}

TEST_CASE("a permanent failure leaves the item unanswered, flagged and uncached") {
  TempDir tmp;
  const std::vector<TaskItem> items = {item("p1", Task::kPos, kSentence, kGold)};
  ScriptedChatClient client({ScriptedChatClient::Fail{false, {}}});
  const auto out = run_model(items, client, options_with_cache(tmp.path()));
  CHECK_FALSE(out[0].content);
  CHECK(out[0].error == "scripted failure");

  const auto run = evaluate("m", items, out, formats::Resources::defaults(), {});
  CHECK_FALSE(run.items[0].answered);
  CHECK(run.items[0].score.prf.score().f1 == 0.0);
  CHECK(run.aggregates.at(Task::kPos).unanswered == 1);
  CHECK(run.aggregates.at(Task::kPos).prf.counts.gold == 9);

  clients::MockChatClient retry;
  run_model(items, retry, options_with_cache(tmp.path()));
  CHECK(retry.calls() == 1);
}

TEST_CASE("answer extraction on model-shaped responses") {
  const auto ds = extract_answer(Task::kPos, kDeepseek);
  CHECK(ds.extracted);
  CHECK(ds.tags.size() == 11);
  const auto wrapped = extract_answer(Task::kPos, std::string("答案：") + kGold);
  CHECK(wrapped.extracted);
  CHECK(wrapped.tags.size() == 9);
  const auto prose = extract_answer(Task::kNer, "这段文字讲述了一位官员的升迁经历。");
  CHECK_FALSE(prose.extracted);
  CHECK(prose.entities.empty());
}

TEST_CASE("evaluate routes POS items to multiset PRF") {
  const std::vector<TaskItem> items = {item("a", Task::kPos, kSentence, kGold), item("b", Task::kPos, kSentence, kGold)};
  const auto run = evaluate("m", items, {answer("a", kDeepseek), answer("b", kGold)}, formats::Resources::defaults(), {});
  CHECK(std::abs(run.items[0].score.prf.score().f1 - 0.6) < 1e-12);
  CHECK(run.items[1].score.prf.score().f1 == 1.0);
  const auto& agg = run.aggregates.at(Task::kPos);
  CHECK(agg.prf.counts == metrics::Counts{15, 20, 18});
}

TEST_CASE("reverse dictionary uses the embedding provider") {
  metrics::MockEmbeddingProvider provider(16);
  const std::vector<TaskItem> items = {item("r", Task::kReverseDictionary, "臣子杀死君主", "弑")};
  const auto run = evaluate("m", items, {answer("r", "弑")}, formats::Resources::defaults(), {}, &provider);
  CHECK(std::abs(run.items[0].score.embed.f1 - 1.0) < 1e-12);

  const auto unscored = evaluate("m", items, {answer("r", "弑")}, formats::Resources::defaults(), {});
  CHECK_FALSE(unscored.items[0].score.scored);
  CHECK(unscored.aggregates.at(Task::kReverseDictionary).unscored == 1);
  CHECK(unscored.aggregates.at(Task::kReverseDictionary).embed.items == 0);
  CHECK_FALSE(headline(Task::kReverseDictionary, unscored.aggregates.at(Task::kReverseDictionary)));
}

TEST_CASE("EvalRun round-trips and aggregates recompute exactly") {
  metrics::MockEmbeddingProvider provider(8);
  const auto loaded = load_bench(kBenchData / "items.jsonl");
  std::vector<ModelResponse> responses;
  for (const auto& it : loaded.items) responses.push_back(answer(it.id, it.input));
  auto run = evaluate("echo", loaded.items, responses, formats::Resources::defaults(), {}, &provider);
  const auto text = format_eval_run(run);
  const auto parsed = config::parse(text);
  CHECK(aggregates_consistent(parsed));
  CHECK(format_eval_run(eval_run_from_json(parsed)) == text);
  CHECK(parsed["counts"]["items"] == 6);

  auto tampered = parsed;
  tampered["items"][0]["prf"]["gold"] = 99;
  CHECK_FALSE(aggregates_consistent(tampered));
}

TEST_CASE("property: persisted per-item results reproduce the aggregates") {
  testing::Gen g(91);
  const std::vector<Task> tasks = {Task::kPunctuation, Task::kPos,           Task::kNer,
                                   Task::kTranslation, Task::kWordExplanation, Task::kReverseDictionary};
  for (int trial = 0; trial < 100; ++trial) {
    EvalRun run;
    run.model = "m";
    const auto n = 1 + g.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      ItemResult r;
      r.id = std::to_string(i);
      r.task = g.pick(tasks);
      r.answered = g.coin(0.9);
      r.extracted = r.answered && g.coin(0.9);
      r.score.scored = g.coin(0.9);
      const auto gold = g.below(10);
      const auto pred = g.below(10);
      const auto tp = g.below(std::min(gold, pred) + 1);
      r.score.prf.counts = {tp, pred, gold};
      r.score.prf.per_category["x"] = {tp, pred, gold};
      for (std::size_t k = 0; k < metrics::kMaxBleuOrder; ++k) {
        r.score.bleu.totals[k] = g.below(20);
        r.score.bleu.matches[k] = g.below(r.score.bleu.totals[k] + 1);
      }
      r.score.bleu.candidate_len = r.score.bleu.totals[0];
      r.score.bleu.reference_len = g.below(25);
      r.score.bleu_scores = metrics::score_bleu(r.score.bleu, metrics::Smoothing::kAddOneOnZero);
      r.score.embed = {g.real(-1, 1), g.real(-1, 1), g.real(-1, 1)};
      run.items.push_back(r);
    }
    run.aggregates = compute_aggregates(run.items);
    const auto stored = config::parse(format_eval_run(run));
    REQUIRE(aggregates_consistent(stored));
    CHECK(aggregates_to_json(eval_run_from_json(stored).aggregates) == aggregates_to_json(run.aggregates));
  }
}

TEST_CASE("min-max normalization endpoints") {
  using V = std::vector<std::optional<double>>;
  CHECK(min_max_normalize(V{0.6, 0.9}) == V{0.0, 1.0});
  CHECK(min_max_normalize(V{0.5, 0.75, 1.0}) == V{0.0, 0.5, 1.0});
  CHECK(min_max_normalize(V{0.4, 0.4}) == V{1.0, 1.0});
  CHECK(min_max_normalize(V{0.3, std::nullopt, 0.7}) == V{0.0, std::nullopt, 1.0});
  CHECK(min_max_normalize(V{std::nullopt}) == V{std::nullopt});
}

TEST_CASE("property: normalization keeps the ranking and hits 0 and 1") {
  testing::Gen g(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::optional<double>> raw;
    const auto n = 2 + g.below(8);
    for (std::size_t i = 0; i < n; ++i) raw.push_back(g.coin(0.2) ? g.real(0, 1) : std::round(g.real(0, 4)) / 4);
    const auto norm = min_max_normalize(raw);
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const bool flat = **lo == **hi;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(*norm[i] >= 0.0);
      CHECK(*norm[i] <= 1.0);
      if (*raw[i] == **hi) CHECK(*norm[i] == 1.0);
      if (*raw[i] == **lo && !flat) CHECK(*norm[i] == 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (*raw[i] < *raw[j]) CHECK(*norm[i] < *norm[j]);
        if (*raw[i] == *raw[j]) CHECK(*norm[i] == *norm[j]);
      }
    }
  }
}

TEST_CASE("a single run keeps raw radar values") {
  const std::vector<TaskItem> items = {item("a", Task::kPos, kSentence, kGold)};
  const auto run = evaluate("solo", items, {answer("a", kDeepseek)}, formats::Resources::defaults(), {});
  const auto radar = compute_radar({run});
  CHECK_FALSE(radar.normalized);
  REQUIRE(radar.values.size() == 1);
  CHECK(std::abs(*radar.values[0][1] - 0.6) < 1e-12);
  CHECK_FALSE(radar.values[0][0]);
  const auto payload = config::parse(format_radar_json(radar));
  CHECK(payload["normalized"] == false);
  CHECK(payload["models"][0]["values"]["punctuation"].is_null());
}

TEST_CASE("three mock models: deterministic runs, warm cache and radar extremes") {
  TempDir tmp;
  const auto cfg = fixture_config(tmp.path() / "cache");
  const auto first = run_eval(cfg, tmp.path() / "a", {}, [](auto) {});
  CHECK(first.items == 6);
  CHECK(first.cached == 0);
  REQUIRE(first.run_files.size() == 3);

  const auto second = run_eval(cfg, tmp.path() / "b", {}, [](auto) {});
  CHECK(second.cached == 18);
  for (const auto* name : {"strong", "middling", "weak"}) {
    const auto file = std::string(name) + ".evalrun.json";
    CHECK(io::read_file(tmp.path() / "a" / file) == io::read_file(tmp.path() / "b" / file));
  }

  std::vector<EvalRun> runs;
  for (const auto& p : first.run_files) runs.push_back(read_eval_run(p));
  CHECK(std::abs(runs[1].items[0].score.prf.score().f1 - 0.6) < 1e-12);
  CHECK(runs[0].aggregates.at(Task::kPunctuation).prf.micro().f1 == 1.0);

  const auto radar = compute_radar(runs);
  CHECK(radar.normalized);
  for (std::size_t t = 0; t < report_tasks().size(); ++t) {
    std::vector<double> raw, norm;
    for (std::size_t m = 0; m < runs.size(); ++m) {
      raw.push_back(*radar.raw[m][t]);
      norm.push_back(*radar.values[m][t]);
    }
    CHECK(*std::max_element(norm.begin(), norm.end()) == 1.0);
    if (*std::min_element(raw.begin(), raw.end()) < *std::max_element(raw.begin(), raw.end())) {
      CHECK(*std::min_element(norm.begin(), norm.end()) == 0.0);
    }
    CHECK(std::max_element(raw.begin(), raw.end()) - raw.begin() ==
          std::max_element(norm.begin(), norm.end()) - norm.begin());
  }
  // The strong model answers every task exactly.
  for (std::size_t t = 0; t < report_tasks().size(); ++t) CHECK(*radar.values[0][t] == 1.0);
}

TEST_CASE("report writes tables in the result-table column order") {
  TempDir tmp;
  const auto cfg = fixture_config(tmp.path() / "cache");
  const auto summary = run_eval(cfg, tmp.path(), {}, [](auto) {});
  ReportConfig rc;
  rc.runs = summary.run_files;
  const auto files = run_report(rc, tmp.path() / "report");
  CHECK(files.size() == 6);
  const auto understanding = io::read_file(tmp.path() / "report" / "understanding.csv");
  CHECK(understanding.rfind("Model,Punctuation P(%),Punctuation R(%),Punctuation F1(%),POS P(%),", 0) == 0);
  CHECK(understanding.find("\nstrong,100.0000,100.0000,100.0000,") != std::string::npos);
  const auto generation = io::read_file(tmp.path() / "report" / "generation.csv");
  CHECK(generation.rfind("Model,Translation Bleu1,Translation Bleu2,Translation Bleu3,Translation Bleu4,"
                         "Word explanation Bleu1,",
                         0) == 0);
  CHECK(generation.find("Reverse dictionary F1(%)\n") != std::string::npos);
  const auto md = io::read_file(tmp.path() / "report" / "report.md");
  CHECK(md.find("### NER") != std::string::npos);
  CHECK(md.find("| time |") != std::string::npos);
  const auto subcats = io::read_file(tmp.path() / "report" / "subcategories.csv");
  CHECK(subcats.find("ner,time,middling,0.0000,0.0000,0.0000,0,0,1") != std::string::npos);
}

TEST_CASE("report refuses runs whose aggregates were edited") {
  TempDir tmp;
  const auto cfg = fixture_config(tmp.path() / "cache");
  const auto summary = run_eval(cfg, tmp.path(), {"weak"}, [](auto) {});
  auto obj = config::load(summary.run_files[0]);
  obj["aggregates"]["pos"]["prf"]["f1"] = 0.99;
  io::write_file(tmp.path() / "edited.json", obj.dump());
  ReportConfig rc;
  rc.runs = {tmp.path() / "edited.json"};
  CHECK_THROWS_AS(run_report(rc, tmp.path() / "r"), BenchError);
}

TEST_CASE("eval with the built-in mock model") {
  TempDir tmp;
  auto cfg = fixture_config(tmp.path() / "cache");
  const auto summary = run_eval(cfg, tmp.path(), {"mock"}, [](auto) {});
  REQUIRE(summary.run_files.size() == 1);
  CHECK(fs::exists(tmp.path() / "mock.evalrun.json"));
  CHECK(fs::exists(tmp.path() / "mock.responses.jsonl"));
  CHECK_THROWS_AS(run_eval(cfg, tmp.path(), {"nobody"}, [](auto) {}), ConfigError);
}

TEST_CASE("validate_file on bench and record files") {
  TempDir tmp;
  const auto bench = tmp.write("b.jsonl", item_line("a", "pos", kSentence, kGold) + "\n" +
                                              item_line("b", "pos", "四年", "四/m 年/zz") + "\n");
  const auto report = validate_file(bench, FileKind::kBench, formats::Resources::defaults());
  CHECK_FALSE(report.ok());
  REQUIRE(report.problems.size() == 1);
  CHECK(report.problems[0].line == 2);
  CHECK(format_validation(report).find(bench.string() + ":2: ") == 0);

  const auto records = tmp.write(
      "r.jsonl",
      config::Json{{"instruction", "标注"}, {"input", kSentence}, {"output", kGold}, {"task", "pos"}, {"source", "s"},
                   {"stage", "seed"}}.dump() +
          "\nnot json\n" +
          config::Json{{"instruction", "标注"}, {"input", kSentence}, {"output", "四年/q"}, {"task", "pos"},
                       {"source", "s"}, {"stage", "seed"}}.dump() +
          "\n");
  const auto rr = validate_file(records, FileKind::kRecords, formats::Resources::defaults());
  CHECK(rr.valid == 1);
  REQUIRE(rr.problems.size() == 2);
  CHECK(rr.problems[0].line == 2);
  CHECK(rr.problems[1].line == 3);
}

TEST_CASE("the shipped example configs parse") {
  const fs::path dir = fs::path(GUWEN_SOURCE_DIR) / "configs";
  const auto cfg = eval_config_from_json(config::load(dir / "eval.example.json"), dir);
  REQUIRE(cfg.models.size() == 2);
  CHECK(cfg.models[0].settings.model == "guwen-7b");
  CHECK(cfg.models[1].settings.model == "offline");
  CHECK(cfg.check_official);
  const auto report = report_config_from_json(config::load(dir / "report.example.json"), dir);
  CHECK(report.runs.size() == 2);
  CHECK(report.format == ReportFormat::kAll);
}
