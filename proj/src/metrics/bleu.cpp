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

#include "metrics/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "util/utf8.hpp"

namespace guwen::metrics {
namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::uint64_t> count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<Ngram, std::uint64_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

std::vector<std::string> bleu_tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string run;
  auto flush = [&] {
    if (!run.empty()) tokens.push_back(std::move(run));
    run.clear();
  };
  for (char32_t cp : utf8::decode(text)) {
    if (chars::is_space(cp)) {
      flush();
    } else if (chars::is_latin_alnum(cp)) {
      utf8::append(run, cp);
    } else {
      flush();
      tokens.push_back(utf8::encode_one(cp));
    }
  }
  flush();
  return tokens;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int k = 0; k < kMaxBleuOrder; ++k) {
    matches[k] += o.matches[k];
    totals[k] += o.totals[k];
  }
  candidate_len += o.candidate_len;
  reference_len += o.reference_len;
  return *this;
}

BleuStats bleu_stats(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
  BleuStats stats;
  stats.candidate_len = candidate.size();
  stats.reference_len = reference.size();
  for (int k = 0; k < kMaxBleuOrder; ++k) {
    const auto n = static_cast<std::size_t>(k + 1);
    const auto cand = count_ngrams(candidate, n);
    const auto ref = count_ngrams(reference, n);
    for (const auto& [gram, count] : cand) {
      stats.totals[k] += count;
      auto it = ref.find(gram);
      if (it != ref.end()) stats.matches[k] += std::min(count, it->second);
    }
  }
  return stats;
}

BleuScores score_bleu(const BleuStats& stats, Smoothing smoothing, int max_n) {
  if (max_n < 1 || max_n > kMaxBleuOrder) throw MetricError("BLEU order must be in 1..4");
  BleuScores out;
  out.candidate_len = stats.candidate_len;
  out.reference_len = stats.reference_len;
  if (stats.candidate_len == 0) {
    out.brevity_penalty = 0;
    return out;
  }
  if (stats.candidate_len < stats.reference_len) {
    out.brevity_penalty = std::exp(1.0 - static_cast<double>(stats.reference_len) /
                                             static_cast<double>(stats.candidate_len));
  }
  double log_sum = 0;
  for (int k = 0; k < max_n; ++k) {
    double p = 0;
    if (stats.totals[k] > 0) p = static_cast<double>(stats.matches[k]) / static_cast<double>(stats.totals[k]);
    if (p == 0 && smoothing == Smoothing::kAddOneOnZero && k > 0 && stats.totals[k] > 0) {
      p = 1.0 / static_cast<double>(stats.totals[k] + 1);
    }
    if (p == 0) break;  // this and every higher order stay 0
    log_sum += std::log(p);
    out.bleu[k] = out.brevity_penalty * std::exp(log_sum / static_cast<double>(k + 1));
  }
  return out;
}

BleuScores bleu(std::string_view candidate, std::string_view reference, int max_n) {
  const auto cand = bleu_tokenize(candidate);
  const auto ref = bleu_tokenize(reference);
  if (cand.empty() || ref.empty()) throw MetricError("BLEU needs non-empty candidate and reference");
  return score_bleu(bleu_stats(cand, ref), Smoothing::kAddOneOnZero, max_n);
}

BleuScores corpus_bleu(const std::vector<BleuStats>& items, int max_n) {
  if (items.empty()) throw MetricError("corpus BLEU over an empty list");
  BleuStats pooled;
  for (const auto& s : items) pooled += s;
  return score_bleu(pooled, Smoothing::kNone, max_n);
}

}  // namespace guwen::metrics
