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


#include "bench/answer.hpp"

#include <algorithm>

#include "formats/error.hpp"
#include "formats/records.hpp"
#include "util/utf8.hpp"

namespace guwen::bench {
namespace {

using formats::Task;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const auto a = static_cast<unsigned char>(s[i]);
    const auto b = static_cast<unsigned char>(prefix[i]);
    if (std::tolower(a) != std::tolower(b)) return false;
  }
  return true;
}

std::string extract_punctuated(std::string_view response, const ExtractOptions& opts,
                               const textnorm::PunctInventory& inv) {
  std::u32string best;
  for (auto line : formats::split_lines(response)) {
    const auto text = utf8::decode(strip_preamble(line, opts));
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t j = i;
      bool has_mark = false;
      while (j < text.size()) {
        if (auto m = inv.match_at(text, j)) {
          has_mark = true;
          j += m->length;
        } else if (chars::is_cjk_ideograph(text[j])) {
          ++j;
        } else {
          break;
        }
      }
      if (j == i) {
        ++i;
        continue;
      }
      if (has_mark && j - i > best.size()) best = text.substr(i, j - i);
      i = j;
    }
  }
  return utf8::encode(best);
}

}  // namespace

std::vector<std::string> ExtractOptions::default_preambles() {
  return {"答案：", "答案:", "答：", "答:", "输出：", "输出:", "结果：", "结果:", "译文：", "译文:",
          "翻译：", "翻译:", "解释：", "解释:", "释义：", "释义:", "词语：", "词语:", "answer:",
          "output:", "result:", "translation:", "explanation:", "word:"};
}

std::string strip_preamble(std::string_view line, const ExtractOptions& opts) {
  line = trim(line);
  for (const auto& p : opts.preambles) {
    if (starts_with_ci(line, p)) return std::string(trim(line.substr(p.size())));
  }
  return std::string(line);
}

Prediction extract_answer(Task task, std::string_view response, const ExtractOptions& opts,
                          const formats::Resources& res) {
  Prediction pred;
  pred.task = task;
  switch (task) {
    case Task::kPos:
      for (auto line : formats::split_lines(response)) {
        const auto candidate = strip_preamble(line, opts);
        if (candidate.empty()) continue;
        try {
          pred.tags = formats::parse_slash_tags(candidate);
          pred.extracted = true;
          break;
        } catch (const formats::FormatError&) {
        }
      }
      break;
    case Task::kPunctuation:
      pred.text = extract_punctuated(response, opts, res.inventory);
      pred.extracted = !pred.text.empty();
      break;
    case Task::kNer:
      try {
        pred.entities = formats::parse_entity_output(response, res.aliases);
        pred.extracted = true;
      } catch (const formats::FormatError&) {
      }
      break;
    default: {
      std::string text;
      for (auto line : formats::split_lines(trim(response))) {
        if (!text.empty()) text += '\n';
        text += text.empty() ? strip_preamble(line, opts) : std::string(trim(line));
      }
      pred.text = std::string(trim(text));
      pred.extracted = !pred.text.empty();
      break;
    }
  }
  return pred;
}

ItemScore score_item(Task task, std::string_view gold, const Prediction& pred, const formats::Resources& res,
                     const ScoreOptions& opts, metrics::EmbeddingProvider* embedder) {
  ItemScore out;
  switch (task) {
    case Task::kPunctuation:
      out.prf = metrics::prf_punct(gold, pred.text, res.inventory, opts.punct);
      break;
    case Task::kPos:
      out.prf = metrics::prf_pos(formats::parse_slash_tags(gold), pred.tags, opts.pos_match);
      break;
    case Task::kNer:
      out.prf = metrics::prf_entities(formats::parse_entity_output(gold, res.aliases), pred.entities,
                                      opts.entity_match);
      break;
    case Task::kReverseDictionary:
      if (!embedder) {
        out.scored = false;
        out.note = "no embedding provider";
        break;
      }
      if (pred.text.empty()) break;
      try {
        out.embed = metrics::embed_score(pred.text, gold, *embedder);
      } catch (const metrics::ProviderError& e) {
        out.scored = false;
        out.note = e.what();
      }
      break;
    default: {
      const auto ref = metrics::bleu_tokenize(gold);
      if (ref.empty()) throw metrics::MetricError("empty reference");
      out.bleu = metrics::bleu_stats(metrics::bleu_tokenize(pred.text), ref);
      out.bleu_scores = metrics::score_bleu(out.bleu, metrics::Smoothing::kAddOneOnZero);
      break;
    }
  }
  return out;
}

double headline(Task task, const ItemScore& score) {
  switch (task) {
    case Task::kPunctuation:
    case Task::kPos:
    case Task::kNer:
      return score.prf.score().f1;
    case Task::kReverseDictionary:
      return score.embed.f1;
    default:
      return score.bleu_scores.bleu[0];
  }
}

}  // namespace guwen::bench
