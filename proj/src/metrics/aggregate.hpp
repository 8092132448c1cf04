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
#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "metrics/bleu.hpp"
#include "metrics/embed.hpp"
#include "metrics/prf.hpp"

namespace guwen::metrics {

// Micro aggregation: counts are summed first, scores computed once. Vacuous
// items contribute nothing.
struct PrfReport {
  std::size_t items = 0;
  Counts counts;
  CategoryCounts category_counts;

  PRF micro() const { return PRF::from_counts(counts); }
  std::map<std::string, PRF> per_category() const;

  PrfReport& merge(const PrfReport& other);
};

struct BleuReport {
  std::size_t items = 0;
  BleuStats pooled;
  // Sum of smoothed sentence scores; divided by items on read.
  std::array<double, kMaxBleuOrder> sentence_sum{};

  BleuScores corpus() const { return score_bleu(pooled, Smoothing::kNone); }
  std::array<double, kMaxBleuOrder> sentence_mean() const;

  BleuReport& merge(const BleuReport& other);
};

struct EmbedReport {
  std::size_t items = 0;
  double precision_sum = 0;
  double recall_sum = 0;
  double f1_sum = 0;

  EmbedScore mean() const;

  EmbedReport& merge(const EmbedReport& other);
};

// Each overload throws MetricError on an empty list.
PrfReport aggregate(std::span<const PrfResult> items);
BleuReport aggregate(std::span<const BleuStats> items);
EmbedReport aggregate(std::span<const EmbedScore> items);

}  // namespace guwen::metrics
