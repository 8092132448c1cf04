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
#include <optional>
#include <string>
#include <vector>

#include "datagen/datagen.hpp"
#include "util/config.hpp"

namespace guwen::datagen {

inline const std::vector<std::string>& all_stages() {
  static const std::vector<std::string> kStages = {"pairs",  "seed",  "expand",   "reverse", "filter",
                                                   "pilot",  "generate", "integrate", "export"};
  return kStages;
}

struct SourceSpec {
  std::filesystem::path path;
  Task task = Task::kOther;
  corpus::SourceFormat format = corpus::SourceFormat::kLineJson;
};

struct DatagenConfig {
  std::vector<SourceSpec> sources;
  std::vector<std::filesystem::path> supplementary;  // record files merged at integrate
  config::Json client = config::Json::object();
  config::Json embedding = config::Json::object();
  clients::ModelSettings model;
  std::filesystem::path templates_dir;
  std::map<std::string, std::string> seeds;  // task name -> seed instruction override
  std::size_t reverse_pairs = 2;             // pairs per task sent to reverse reasoning
  FilterOptions filter;
  std::filesystem::path manual_decisions;
  std::size_t pilot_sample = 20;
  std::size_t generate_inputs = 5;    // inputs sampled per instruction
  std::size_t top_instructions = 0;   // per task after piloting; 0 keeps all
  std::vector<std::string> stages = all_stages();
  std::uint64_t seed = 0;
  std::filesystem::path base;  // directory relative paths resolved against
};

DatagenConfig datagen_config_from_json(const config::Json& obj, const std::filesystem::path& base);

struct DatagenSummary {
  std::vector<std::string> stages_run;
  std::size_t pairs = 0;
  std::size_t pair_issues = 0;
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t generated = 0;
  std::size_t generation_rejects = 0;
  std::size_t dataset = 0;
  std::vector<std::string> log;
};

// Runs the configured stages in pipeline order. A stage whose inputs were not
// produced in this run reads them from `out_dir`. Sleeps use `sleeper`.
DatagenSummary run_datagen(const DatagenConfig& config, const std::filesystem::path& out_dir,
                           clients::Sleeper sleeper = clients::real_sleeper());

std::string format_pairs(const std::vector<IOPair>& pairs);
std::vector<IOPair> parse_pairs(std::string_view text);
std::string format_candidates(const std::vector<InstructionCandidate>& candidates);
std::vector<InstructionCandidate> parse_candidates(std::string_view text);

}  // namespace guwen::datagen
