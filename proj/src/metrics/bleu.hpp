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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace guwen::metrics {

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxBleuOrder = 4;

// One token per CJK character, punctuation mark or other symbol; runs of
// Latin letters and digits form a single token; whitespace only separates.
std::vector<std::string> bleu_tokenize(std::string_view text);

// Clipped n-gram matches and candidate n-gram totals for orders 1..4, plus
// lengths. Summing stats over items and scoring once gives corpus BLEU.
struct BleuStats {
  std::array<std::uint64_t, kMaxBleuOrder> matches{};
  std::array<std::uint64_t, kMaxBleuOrder> totals{};
  std::uint64_t candidate_len = 0;
  std::uint64_t reference_len = 0;

  BleuStats& operator+=(const BleuStats& o);
  bool operator==(const BleuStats&) const = default;
};

struct BleuScores {
  // bleu[n-1] is BLEU-n; orders above max_n are left at 0.
  std::array<double, kMaxBleuOrder> bleu{};
  double brevity_penalty = 1.0;
  std::uint64_t candidate_len = 0;
  std::uint64_t reference_len = 0;
};

enum class Smoothing {
  kNone,
  // For orders above 1 with candidate n-grams but no matches, use
  // 1/(total+1). Orders the candidate is too short for stay at 0.
  kAddOneOnZero,
};

BleuStats bleu_stats(const std::vector<std::string>& candidate, const std::vector<std::string>& reference);

BleuScores score_bleu(const BleuStats& stats, Smoothing smoothing, int max_n = kMaxBleuOrder);

// Sentence-level, smoothed. Throws MetricError when either side tokenizes to
// nothing or max_n is outside 1..4.
BleuScores bleu(std::string_view candidate, std::string_view reference, int max_n = kMaxBleuOrder);

// Corpus-level, unsmoothed, over pooled statistics.
BleuScores corpus_bleu(const std::vector<BleuStats>& items, int max_n = kMaxBleuOrder);

}  // namespace guwen::metrics
