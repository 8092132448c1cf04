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

#include "metrics/aggregate.hpp"

namespace guwen::metrics {

std::map<std::string, PRF> PrfReport::per_category() const {
  std::map<std::string, PRF> out;
  for (const auto& [k, c] : category_counts) out[k] = PRF::from_counts(c);
  return out;
}

PrfReport& PrfReport::merge(const PrfReport& other) {
  items += other.items;
  counts += other.counts;
  for (const auto& [k, c] : other.category_counts) category_counts[k] += c;
  return *this;
}

std::array<double, kMaxBleuOrder> BleuReport::sentence_mean() const {
  std::array<double, kMaxBleuOrder> out{};
  if (items == 0) return out;
  for (int k = 0; k < kMaxBleuOrder; ++k) out[k] = sentence_sum[k] / static_cast<double>(items);
  return out;
}

BleuReport& BleuReport::merge(const BleuReport& other) {
  items += other.items;
  pooled += other.pooled;
  for (int k = 0; k < kMaxBleuOrder; ++k) sentence_sum[k] += other.sentence_sum[k];
  return *this;
}

EmbedScore EmbedReport::mean() const {
  EmbedScore out;
  if (items == 0) return out;
  const auto n = static_cast<double>(items);
  out.precision = precision_sum / n;
  out.recall = recall_sum / n;
  out.f1 = f1_sum / n;
  return out;
}

EmbedReport& EmbedReport::merge(const EmbedReport& other) {
  items += other.items;
  precision_sum += other.precision_sum;
  recall_sum += other.recall_sum;
  f1_sum += other.f1_sum;
  return *this;
}

PrfReport aggregate(std::span<const PrfResult> items) {
  if (items.empty()) throw MetricError("aggregate over an empty list");
  PrfReport report;
  for (const auto& item : items) {
    ++report.items;
    report.counts += item.counts;
    for (const auto& [k, c] : item.per_category) report.category_counts[k] += c;
  }
  return report;
}

BleuReport aggregate(std::span<const BleuStats> items) {
  if (items.empty()) throw MetricError("aggregate over an empty list");
  BleuReport report;
  for (const auto& item : items) {
    ++report.items;
    report.pooled += item;
    const auto sentence = score_bleu(item, Smoothing::kAddOneOnZero);
    for (int k = 0; k < kMaxBleuOrder; ++k) report.sentence_sum[k] += sentence.bleu[k];
  }
  return report;
}

EmbedReport aggregate(std::span<const EmbedScore> items) {
  if (items.empty()) throw MetricError("aggregate over an empty list");
  EmbedReport report;
  for (const auto& item : items) {
    ++report.items;
    report.precision_sum += item.precision;
    report.recall_sum += item.recall;
    report.f1_sum += item.f1;
  }
  return report;
}

}  // namespace guwen::metrics
