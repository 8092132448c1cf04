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

#include "metrics/prf.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "util/utf8.hpp"

namespace guwen::metrics {
namespace {

template <typename Key>
std::map<Key, std::uint64_t> histogram(const std::vector<Key>& keys) {
  std::map<Key, std::uint64_t> h;
  for (const auto& k : keys) ++h[k];
  return h;
}

template <typename Key>
std::uint64_t multiset_overlap(const std::map<Key, std::uint64_t>& a, const std::map<Key, std::uint64_t>& b) {
  std::uint64_t n = 0;
  for (const auto& [k, count] : a) {
    auto it = b.find(k);
    if (it != b.end()) n += std::min(count, it->second);
  }
  return n;
}

// Maps each predicted base position to its aligned gold position, if any.
std::vector<std::optional<std::size_t>> align_lcs(const std::u32string& gold, const std::u32string& pred) {
  std::vector<std::optional<std::size_t>> map(pred.size());
  std::size_t prefix = 0;
  while (prefix < gold.size() && prefix < pred.size() && gold[prefix] == pred[prefix]) {
    map[prefix] = prefix;
    ++prefix;
  }
  std::size_t suffix = 0;
  while (suffix < gold.size() - prefix && suffix < pred.size() - prefix &&
         gold[gold.size() - 1 - suffix] == pred[pred.size() - 1 - suffix]) {
    map[pred.size() - 1 - suffix] = gold.size() - 1 - suffix;
    ++suffix;
  }
  const std::size_t n = gold.size() - prefix - suffix;
  const std::size_t m = pred.size() - prefix - suffix;
  if (n == 0 || m == 0) return map;

  // dir: 0 = diagonal match, 1 = up (skip gold), 2 = left (skip pred).
  std::vector<std::uint8_t> dir((n + 1) * (m + 1), 0);
  std::vector<std::uint32_t> prev(m + 1, 0);
  std::vector<std::uint32_t> cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (gold[prefix + i - 1] == pred[prefix + j - 1]) {
        cur[j] = prev[j - 1] + 1;
        dir[i * (m + 1) + j] = 0;
      } else if (prev[j] >= cur[j - 1]) {
        cur[j] = prev[j];
        dir[i * (m + 1) + j] = 1;
      } else {
        cur[j] = cur[j - 1];
        dir[i * (m + 1) + j] = 2;
      }
    }
    std::swap(prev, cur);
  }
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 && j > 0) {
    switch (dir[i * (m + 1) + j]) {
      case 0:
        map[prefix + j - 1] = prefix + i - 1;
        --i;
        --j;
        break;
      case 1:
        --i;
        break;
      default:
        --j;
        break;
    }
  }
  return map;
}

using MarkKey = std::pair<std::size_t, std::string>;

}  // namespace

PRF PRF::from_counts(const Counts& c) {
  PRF out;
  out.counts = c;
  if (c.predicted > 0) out.precision = static_cast<double>(c.tp) / static_cast<double>(c.predicted);
  if (c.gold > 0) out.recall = static_cast<double>(c.tp) / static_cast<double>(c.gold);
  // 2PR/(P+R) reduces to 2tp/(predicted+gold), which avoids compounding rounding.
  if (c.tp > 0) out.f1 = 2.0 * static_cast<double>(c.tp) / static_cast<double>(c.predicted + c.gold);
  return out;
}

PRF PrfResult::score() const {
  if (vacuous) {
    PRF out;
    out.precision = out.recall = out.f1 = 1.0;
    out.counts = counts;
    return out;
  }
  return PRF::from_counts(counts);
}

PrfResult prf_pos(const formats::TaggedSequence& gold, const formats::TaggedSequence& pred, PosMatch mode) {
  using Key = std::tuple<std::size_t, std::size_t, std::string, std::string>;
  auto keys = [mode](const formats::TaggedSequence& seq) {
    std::vector<Key> out;
    std::size_t pos = 0;
    for (const auto& item : seq) {
      const std::size_t len = utf8::length(item.segment);
      if (item.known) {
        if (mode == PosMatch::kSpan) {
          out.emplace_back(pos, pos + len, item.segment, item.tag);
        } else {
          out.emplace_back(0, 0, item.segment, item.tag);
        }
      }
      pos += len;
    }
    return out;
  };
  const auto gold_h = histogram(keys(gold));
  const auto pred_h = histogram(keys(pred));

  PrfResult result;
  result.counts.predicted = pred.size();
  result.counts.gold = gold.size();
  for (const auto& item : gold) ++result.per_category[item.tag].gold;
  for (const auto& item : pred) ++result.per_category[item.tag].predicted;
  for (const auto& [k, count] : gold_h) {
    auto it = pred_h.find(k);
    if (it == pred_h.end()) continue;
    const auto n = std::min(count, it->second);
    result.counts.tp += n;
    result.per_category[std::get<3>(k)].tp += n;
  }
  return result;
}

PrfResult prf_punct(std::string_view gold_text, std::string_view pred_text, const textnorm::PunctInventory& inventory,
                    PunctOptions options) {
  auto gold = textnorm::strip_punctuation(gold_text, inventory);
  auto pred = textnorm::strip_punctuation(pred_text, inventory);
  const auto gold_base = utf8::decode(gold.base_text);
  const auto pred_base = utf8::decode(pred.base_text);

  auto keep = [&](const textnorm::PunctMark& m, std::size_t base_len) {
    return options.count_terminal_marks || m.offset < base_len;
  };

  PrfResult result;
  result.base_mismatch = gold_base != pred_base;
  std::vector<MarkKey> gold_keys;
  for (const auto& m : gold.marks) {
    if (!keep(m, gold_base.size())) continue;
    gold_keys.emplace_back(m.offset, m.class_id);
    ++result.per_category[m.class_id].gold;
  }

  std::vector<std::optional<std::size_t>> align;
  if (result.base_mismatch) align = align_lcs(gold_base, pred_base);

  std::vector<MarkKey> pred_keys;
  for (const auto& m : pred.marks) {
    if (!keep(m, pred_base.size())) continue;
    ++result.counts.predicted;
    ++result.per_category[m.class_id].predicted;
    if (!result.base_mismatch) {
      pred_keys.emplace_back(m.offset, m.class_id);
      continue;
    }
    std::optional<std::size_t> mapped;
    if (m.offset == 0) {
      mapped = 0;
    } else if (align[m.offset - 1]) {
      mapped = *align[m.offset - 1] + 1;
    } else if (m.offset < pred_base.size() && align[m.offset]) {
      mapped = *align[m.offset];
    }
    if (mapped) pred_keys.emplace_back(*mapped, m.class_id);
  }
  result.counts.gold = gold_keys.size();

  const auto gold_h = histogram(gold_keys);
  const auto pred_h = histogram(pred_keys);
  for (const auto& [k, count] : gold_h) {
    auto it = pred_h.find(k);
    if (it == pred_h.end()) continue;
    const auto n = std::min(count, it->second);
    result.counts.tp += n;
    result.per_category[k.second].tp += n;
  }
  return result;
}

namespace {

bool contains_either(const std::string& a, const std::string& b) {
  return a.find(b) != std::string::npos || b.find(a) != std::string::npos;
}

// Kuhn's augmenting-path matching; entity lists are short.
std::uint64_t max_matching(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
  std::vector<int> owner(gold.size(), -1);
  std::uint64_t matched = 0;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    std::vector<bool> seen(gold.size(), false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t g = 0; g < gold.size(); ++g) {
        if (seen[g] || pred[u].empty() || gold[g].empty() || !contains_either(gold[g], pred[u])) continue;
        seen[g] = true;
        if (owner[g] < 0 || augment(static_cast<std::size_t>(owner[g]))) {
          owner[g] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(p)) ++matched;
  }
  return matched;
}

}  // namespace

PrfResult prf_entities(const formats::EntitySet& gold, const formats::EntitySet& pred, EntityMatch mode) {
  PrfResult result;
  for (auto c : formats::kEntityCategories) {
    const auto& g = gold[c];
    const auto& p = pred[c];
    Counts counts;
    counts.gold = g.size();
    counts.predicted = p.size();
    counts.tp = mode == EntityMatch::kExact ? multiset_overlap(histogram(g), histogram(p)) : max_matching(g, p);
    result.per_category[std::string(formats::key(c))] = counts;
    result.counts += counts;
  }
  result.vacuous = gold.empty() && pred.empty();
  return result;
}

}  // namespace guwen::metrics
