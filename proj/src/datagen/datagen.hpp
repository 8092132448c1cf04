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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bench/answer.hpp"
#include "clients/factory.hpp"
#include "corpus/corpus.hpp"
#include "datagen/templates.hpp"
#include "formats/records.hpp"
#include "formats/task.hpp"

namespace guwen::datagen {

using formats::InstructionRecord;
using formats::Task;

struct IOPair {
  std::string id;
  std::string input;
  std::string output;
  Task task = Task::kOther;
  std::string source;

  bool operator==(const IOPair&) const = default;
};

struct PairIssue {
  std::string record_id;
  std::string reason;
};

struct PairBuildResult {
  std::vector<IOPair> pairs;
  std::vector<PairIssue> issues;
};

// Punctuation: the document text is the punctuated gold. POS: the text is a
// slash-tag line. NER, translation and the QA-style tasks: the text is the
// input and meta "output" holds the answer. Pair ids are meta "id" when
// present, else source:index.
PairBuildResult build_pairs(const std::vector<corpus::RawDocument>& records, Task task,
                            const formats::Resources& res = formats::Resources::defaults());

enum class Origin { kManual, kExpanded, kReverse };
enum class Status { kPending, kAccepted, kRejected };

std::string_view to_string(Origin origin);
std::string_view to_string(Status status);

struct InstructionCandidate {
  std::string id;
  std::string text;
  Task task = Task::kOther;
  Origin origin = Origin::kManual;
  std::string parent;
  Status status = Status::kPending;
  std::string reason;  // first failing rule when rejected

  bool operator==(const InstructionCandidate&) const = default;
};

struct GenerationSettings {
  clients::ModelSettings model;
  clients::Sleeper sleeper = clients::real_sleeper();
};

// Items of a "1. ..." / "2、..." list; continuation lines join their item.
// Text before the first item is ignored.
std::vector<std::string> parse_numbered_list(std::string_view response);

// One request per seed; candidates are deduplicated by text, first wins.
// Empty or unparseable responses and client failures land in `log`.
std::vector<InstructionCandidate> expand_instructions(const std::vector<InstructionCandidate>& seeds,
                                                      clients::ChatClient& client, const GenerationSettings& settings,
                                                      const TemplateSet& templates, std::vector<std::string>& log);

// Throws DatagenError on an empty pair list.
std::vector<InstructionCandidate> reverse_reason(const std::vector<IOPair>& pairs, clients::ChatClient& client,
                                                 const GenerationSettings& settings, const TemplateSet& templates,
                                                 std::vector<std::string>& log);

struct FilterOptions {
  std::size_t min_length = 10;  // codepoints
  std::size_t max_length = 500;
};

// Rule order: empty, too-short, too-long, multi-task, no-structured-schema,
// format-mismatch. The first failing rule names the rejection.
std::optional<std::string> check_candidate(const InstructionCandidate& candidate, const FilterOptions& opts = {},
                                           const formats::Resources& res = formats::Resources::defaults());

struct FilterResult {
  std::vector<InstructionCandidate> accepted;
  std::vector<InstructionCandidate> rejected;
};

// Manual decisions: `candidate_id<TAB>accept|reject` lines. A manual reject
// overrides acceptance; a manual accept cannot rescue a rule failure.
using ManualDecisions = std::map<std::string, bool>;
ManualDecisions parse_manual_decisions(std::string_view text);

FilterResult filter_candidates(std::vector<InstructionCandidate> candidates, const FilterOptions& opts = {},
                               const ManualDecisions& manual = {},
                               const formats::Resources& res = formats::Resources::defaults());

struct PilotScore {
  std::string candidate_id;
  std::string instruction;
  Task task = Task::kOther;
  double mean = 0;
  std::size_t scored = 0;
  std::size_t unscored = 0;
};

struct PilotOptions {
  std::size_t sample_size = 20;
  std::uint64_t seed = 0;
};

// Each instruction runs on the same seeded sample of its task's pairs.
// Results are ranked by mean score, ties in input order.
std::vector<PilotScore> pilot_test(const std::vector<InstructionCandidate>& accepted, const std::vector<IOPair>& pairs,
                                   clients::ChatClient& client, const GenerationSettings& settings,
                                   const TemplateSet& templates, const PilotOptions& opts,
                                   const formats::Resources& res = formats::Resources::defaults(),
                                   metrics::EmbeddingProvider* embedder = nullptr);

struct RejectedRecord {
  InstructionRecord record;
  std::string reason;
};

struct GenerateResult {
  std::vector<InstructionRecord> records;
  std::vector<RejectedRecord> rejects;
};

// One request per (instruction, input) of the same task. Outputs are
// extracted, canonicalized and validated; failures go to rejects.
GenerateResult generate_answers(const std::vector<InstructionCandidate>& instructions,
                                const std::vector<IOPair>& inputs, clients::ChatClient& client,
                                const GenerationSettings& settings, const TemplateSet& templates,
                                const formats::Resources& res = formats::Resources::defaults());

struct DatasetStats {
  std::map<std::string, std::size_t> per_task;
  std::map<std::string, std::size_t> per_source;
  std::size_t total = 0;
};

std::string format_dataset_stats(const DatasetStats& stats);

struct IntegrateResult {
  std::vector<InstructionRecord> records;
  DatasetStats stats;
  std::size_t duplicates = 0;
};

// Thrown when a record fails re-validation; `record_id` is set:index, 1-based.
class IntegrationError : public DatagenError {
 public:
  IntegrationError(std::string record_id, const std::string& reason)
      : DatagenError("record " + record_id + ": " + reason), record_id(std::move(record_id)) {}
  std::string record_id;
};

IntegrateResult integrate(const std::vector<std::vector<InstructionRecord>>& sets,
                          const formats::Resources& res = formats::Resources::defaults());

enum class TrainingStage { kPretrain, kSft };

std::optional<TrainingStage> training_stage_from_string(std::string_view name);
std::string training_config_text(TrainingStage stage);
void export_training_config(TrainingStage stage, const std::filesystem::path& path);

}  // namespace guwen::datagen
