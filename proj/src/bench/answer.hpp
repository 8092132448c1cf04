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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formats/entities.hpp"
#include "formats/slash_tags.hpp"
#include "formats/task.hpp"
#include "metrics/bleu.hpp"
#include "metrics/embed.hpp"
#include "metrics/prf.hpp"

namespace guwen::bench {

struct ExtractOptions {
  // Leading labels removed from a response line, matched case-insensitively.
  std::vector<std::string> preambles = default_preambles();

  static std::vector<std::string> default_preambles();
};

struct Prediction {
  formats::Task task = formats::Task::kOther;
  std::string text;                  // punctuation and generation tasks
  formats::TaggedSequence tags;      // pos
  formats::EntitySet entities;       // ner
  bool extracted = false;            // false: empty prediction, flagged
};

std::string strip_preamble(std::string_view line, const ExtractOptions& opts = {});

// POS: first line that parses as slash tags. Punctuation: longest run of
// ideographs and inventory marks holding at least one mark. NER: the entity
// parser. Other tasks: the trimmed response minus a leading label.
Prediction extract_answer(formats::Task task, std::string_view response, const ExtractOptions& opts = {},
                          const formats::Resources& res = formats::Resources::defaults());

struct ScoreOptions {
  metrics::PosMatch pos_match = metrics::PosMatch::kMultiset;
  metrics::EntityMatch entity_match = metrics::EntityMatch::kExact;
  metrics::PunctOptions punct;
};

struct ItemScore {
  metrics::PrfResult prf;          // punctuation, pos, ner
  metrics::BleuStats bleu;         // translation, word explanation
  metrics::BleuScores bleu_scores;
  metrics::EmbedScore embed;       // reverse dictionary
  bool scored = true;              // false when the provider failed
  std::string note;
};

// Gold is in the task's file format: punctuated text, a slash-tag line, an
// entity listing, or a reference string.
ItemScore score_item(formats::Task task, std::string_view gold, const Prediction& pred,
                     const formats::Resources& res = formats::Resources::defaults(), const ScoreOptions& opts = {},
                     metrics::EmbeddingProvider* embedder = nullptr);

// The radar and pilot-test headline: F1, BLEU-1 or embed F1.
double headline(formats::Task task, const ItemScore& score);

}  // namespace guwen::bench
