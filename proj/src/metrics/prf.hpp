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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "formats/entities.hpp"
#include "formats/slash_tags.hpp"
#include "textnorm/punct.hpp"

namespace guwen::metrics {

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t predicted = 0;
  std::uint64_t gold = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

// precision = tp/predicted, recall = tp/gold, each 0 when its denominator is
// 0; f1 is their harmonic mean, 0 when both are 0.
struct PRF {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  Counts counts;

  static PRF from_counts(const Counts& c);
};

using CategoryCounts = std::map<std::string, Counts>;

struct PrfResult {
  Counts counts;
  CategoryCounts per_category;
  // Gold and prediction both empty: the item itself scores 1 while
  // contributing zero counts to any aggregate.
  bool vacuous = false;
  // Punctuation only: the two base texts differed and were aligned.
  bool base_mismatch = false;

  PRF score() const;
};

// kMultiset matches (segment, tag) pairs regardless of position; kSpan also
// requires identical character spans. Unknown tags never match.
enum class PosMatch { kMultiset, kSpan };

PrfResult prf_pos(const formats::TaggedSequence& gold, const formats::TaggedSequence& pred,
                  PosMatch mode = PosMatch::kMultiset);

struct PunctOptions {
  // When false, marks sitting after the last base character are ignored on
  // both sides.
  bool count_terminal_marks = true;
};

// Marks match on (offset, class). If the base texts differ, base characters
// are aligned by longest common subsequence and a predicted mark is carried to
// the gold offset through its preceding character, or its following character
// when the preceding one is unaligned.
PrfResult prf_punct(std::string_view gold, std::string_view pred,
                    const textnorm::PunctInventory& inventory = textnorm::PunctInventory::builtin(),
                    PunctOptions options = {});

// kExact compares surface strings; kOverlap accepts a pair when either string
// contains the other, using a maximum one-to-one matching.
enum class EntityMatch { kExact, kOverlap };

PrfResult prf_entities(const formats::EntitySet& gold, const formats::EntitySet& pred,
                       EntityMatch mode = EntityMatch::kExact);

}  // namespace guwen::metrics
