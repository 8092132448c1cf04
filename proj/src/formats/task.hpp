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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formats/entities.hpp"
#include "textnorm/normalize.hpp"
#include "textnorm/punct.hpp"

namespace guwen::formats {

enum class Task {
  kPunctuation,
  kPos,
  kNer,
  kTranslation,
  kWordExplanation,
  kReverseDictionary,
  kOther,
};

enum class Stage { kSeed, kExpanded, kReverseReasoned, kGenerated, kIntegrated };

std::string_view to_string(Task task);
std::string_view to_string(Stage stage);
std::optional<Task> task_from_string(std::string_view name);
std::optional<Stage> stage_from_string(std::string_view name);

bool is_structured(Task task);

// Shared lookup tables for parsing and scoring. Defaults are the built-ins;
// config files may replace any of them.
struct Resources {
  textnorm::PunctInventory inventory = textnorm::PunctInventory::builtin();
  textnorm::ScriptTable scripts = textnorm::ScriptTable::builtin();
  EntityKeyAliases aliases = EntityKeyAliases::builtin();
  textnorm::NormPolicy policy;

  static const Resources& defaults();
};

// Checks that `output` is a well-formed answer for `task` given `input`.
// Returns the failure reason, or nullopt when the pair is valid.
//   punctuation: output carries at least one mark and its base text equals
//                the input's base text
//   pos:         strict slash-tag parse, non-empty, segments rebuild the input
//                when the input is given
//   ner:         entity structure parses
//   others:      output non-empty
std::optional<std::string> validate_output(Task task, std::string_view input, std::string_view output,
                                           const Resources& res = Resources::defaults());

}  // namespace guwen::formats
