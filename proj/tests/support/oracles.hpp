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

// Reference implementations used only by tests. They deliberately avoid the
// data structures of the production code: n-grams are compared position by
// position and matches are found by exhaustive pairing.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "formats/slash_tags.hpp"

namespace guwen::oracle {

struct NgramCounts {
  double matches[4] = {0, 0, 0, 0};
  double totals[4] = {0, 0, 0, 0};
  double cand_len = 0;
  double ref_len = 0;
};

inline bool same_ngram(const std::vector<std::string>& a, std::size_t i, const std::vector<std::string>& b,
                       std::size_t j, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (a[i + k] != b[j + k]) return false;
  }
  return true;
}

inline NgramCounts ngram_counts(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  NgramCounts c;
  c.cand_len = static_cast<double>(cand.size());
  c.ref_len = static_cast<double>(ref.size());
  for (std::size_t n = 1; n <= 4; ++n) {
    if (cand.size() < n) continue;
    for (std::size_t i = 0; i + n <= cand.size(); ++i) {
      c.totals[n - 1] += 1;
      // Count each distinct n-gram once, at its first occurrence.
      bool first = true;
      for (std::size_t p = 0; p < i; ++p) {
        if (same_ngram(cand, p, cand, i, n)) first = false;
      }
      if (!first) continue;
      double in_cand = 0;
      double in_ref = 0;
      for (std::size_t p = 0; p + n <= cand.size(); ++p) in_cand += same_ngram(cand, p, cand, i, n);
      for (std::size_t p = 0; p + n <= ref.size(); ++p) in_ref += same_ngram(ref, p, cand, i, n);
      c.matches[n - 1] += in_cand < in_ref ? in_cand : in_ref;
    }
  }
  return c;
}

// BLEU-1..4 from (possibly pooled) counts as a product of precisions.
inline std::vector<double> bleu_from_counts(const NgramCounts& c, bool smooth) {
  std::vector<double> out(4, 0.0);
  if (c.cand_len == 0) return out;
  const double bp = c.cand_len < c.ref_len ? std::exp(1.0 - c.ref_len / c.cand_len) : 1.0;
  double product = 1;
  for (int n = 1; n <= 4; ++n) {
    double p = c.totals[n - 1] > 0 ? c.matches[n - 1] / c.totals[n - 1] : 0;
    if (smooth && n > 1 && p == 0 && c.totals[n - 1] > 0) p = 1.0 / (c.totals[n - 1] + 1.0);
    product *= p;
    if (product == 0) break;
    out[n - 1] = bp * std::pow(product, 1.0 / n);
  }
  return out;
}

inline std::vector<std::string> chars_of(const std::u32string& s) {
  std::vector<std::string> out;
  for (char32_t cp : s) {
    std::string t;
    if (cp < 0x800) {
      t.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      t.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      t.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      t.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      t.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    out.push_back(t);
  }
  return out;
}

// Exhaustive pairing for POS multiset matching: each gold item takes the
// first unused prediction with the same segment and a known, equal tag.
inline std::size_t pos_pair_matches(const formats::TaggedSequence& gold, const formats::TaggedSequence& pred) {
  std::vector<bool> used(pred.size(), false);
  std::size_t tp = 0;
  for (const auto& g : gold) {
    for (std::size_t j = 0; j < pred.size(); ++j) {
      if (!used[j] && pred[j].known && g.known && pred[j].segment == g.segment && pred[j].tag == g.tag) {
        used[j] = true;
        ++tp;
        break;
      }
    }
  }
  return tp;
}

// Greedy max-cosine score evaluated entry by entry over the full matrix.
struct GreedyCosine {
  double precision;
  double recall;
  double f1;
};

inline double oracle_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / std::sqrt(na * nb);
}

inline GreedyCosine greedy_cosine(const std::vector<std::vector<double>>& cand,
                                  const std::vector<std::vector<double>>& ref) {
  std::vector<std::vector<double>> sim(cand.size(), std::vector<double>(ref.size()));
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = 0; j < ref.size(); ++j) sim[i][j] = oracle_cosine(cand[i], ref[j]);
  }
  double p = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    double best = sim[i][0];
    for (std::size_t j = 1; j < ref.size(); ++j) best = sim[i][j] > best ? sim[i][j] : best;
    p += best;
  }
  double r = 0;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    double best = sim[0][j];
    for (std::size_t i = 1; i < cand.size(); ++i) best = sim[i][j] > best ? sim[i][j] : best;
    r += best;
  }
  p /= static_cast<double>(cand.size());
  r /= static_cast<double>(ref.size());
  return {p, r, p + r > 0 ? 2 * p * r / (p + r) : 0};
}

}  // namespace guwen::oracle
