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

#include "formats/task.hpp"

#include "formats/slash_tags.hpp"
#include "util/utf8.hpp"

namespace guwen::formats {
namespace {

bool blank(std::string_view s) {
  for (char32_t cp : utf8::decode(s)) {
    if (!chars::is_space(cp)) return false;
  }
  return true;
}

std::string without_spaces(std::string_view s) {
  std::string out;
  for (char32_t cp : utf8::decode(s)) {
    if (!chars::is_space(cp)) utf8::append(out, cp);
  }
  return out;
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kPunctuation: return "punctuation";
    case Task::kPos: return "pos";
    case Task::kNer: return "ner";
    case Task::kTranslation: return "translation";
    case Task::kWordExplanation: return "word_explanation";
    case Task::kReverseDictionary: return "reverse_dictionary";
    case Task::kOther: return "other";
  }
  return "other";
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kSeed: return "seed";
    case Stage::kExpanded: return "expanded";
    case Stage::kReverseReasoned: return "reverse_reasoned";
    case Stage::kGenerated: return "generated";
    case Stage::kIntegrated: return "integrated";
  }
  return "seed";
}

std::optional<Task> task_from_string(std::string_view name) {
  for (auto t : {Task::kPunctuation, Task::kPos, Task::kNer, Task::kTranslation, Task::kWordExplanation,
                 Task::kReverseDictionary, Task::kOther}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::optional<Stage> stage_from_string(std::string_view name) {
  for (auto s : {Stage::kSeed, Stage::kExpanded, Stage::kReverseReasoned, Stage::kGenerated, Stage::kIntegrated}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool is_structured(Task task) { return task == Task::kPunctuation || task == Task::kPos || task == Task::kNer; }

const Resources& Resources::defaults() {
  static const Resources res;
  return res;
}

std::optional<std::string> validate_output(Task task, std::string_view input, std::string_view output,
                                           const Resources& res) {
  if (blank(output)) return "empty output";
  switch (task) {
    case Task::kPunctuation: {
      auto gold = textnorm::strip_punctuation(output, res.inventory);
      if (gold.marks.empty()) return "punctuation output has no marks";
      if (!blank(input)) {
        auto in = textnorm::strip_punctuation(input, res.inventory);
        if (without_spaces(in.base_text) != without_spaces(gold.base_text)) {
          return "punctuation output changes the input characters";
        }
      }
      return std::nullopt;
    }
    case Task::kPos: {
      TaggedSequence seq;
      try {
        seq = parse_slash_tags(output, true);
      } catch (const FormatError& e) {
        return std::string("pos output: ") + e.what();
      }
      if (seq.empty()) return "pos output has no tokens";
      if (!blank(input) && join_segments(seq) != without_spaces(input)) {
        return "pos segments do not rebuild the input";
      }
      return std::nullopt;
    }
    case Task::kNer: {
      try {
        parse_entity_output(output, res.aliases);
      } catch (const FormatError& e) {
        return std::string("ner output: ") + e.what();
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace guwen::formats
