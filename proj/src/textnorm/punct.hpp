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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace guwen::textnorm {

class InventoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One punctuation class. Members are mark surfaces; most are one codepoint,
// a few (the doubled dash and ellipsis) are multi-codepoint sequences.
struct PunctClass {
  std::string id;
  std::vector<std::u32string> members;
  bool paired = false;
};

struct PunctMatch {
  const PunctClass* cls = nullptr;
  std::size_t length = 0;  // codepoints consumed
};

// The punctuation inventory. Member codepoints are pairwise disjoint across
// classes; this is checked on construction.
class PunctInventory {
 public:
  explicit PunctInventory(std::vector<PunctClass> classes);

  // The fourteen-class default inventory.
  static const PunctInventory& builtin();

  // `class_id<TAB>surfaces (space-separated)<TAB>paired|single`, one per line.
  // Blank lines and lines starting with '#' are ignored.
  static PunctInventory parse(std::string_view text);
  static PunctInventory load(const std::filesystem::path& path);

  std::string to_text() const;

  const PunctClass* classify(char32_t cp) const;
  const PunctClass* find(std::string_view class_id) const;

  // Longest member starting at text[pos], if any.
  std::optional<PunctMatch> match_at(std::u32string_view text, std::size_t pos) const;

  std::span<const PunctClass> classes() const { return classes_; }

 private:
  std::vector<PunctClass> classes_;
  std::unordered_map<char32_t, std::size_t> owner_;
  // First codepoint -> (class index, member index), longest member first.
  std::unordered_map<char32_t, std::vector<std::pair<std::size_t, std::size_t>>> by_head_;
};

struct PunctMark {
  std::size_t offset = 0;  // base codepoints preceding the mark
  std::string class_id;
  std::string surface;

  bool operator==(const PunctMark&) const = default;
};

struct PunctAnnotation {
  std::string base_text;
  std::vector<PunctMark> marks;  // sorted by offset, stable for ties

  bool operator==(const PunctAnnotation&) const = default;
};

PunctAnnotation strip_punctuation(std::string_view text,
                                  const PunctInventory& inventory = PunctInventory::builtin());

std::string reinsert(const PunctAnnotation& annotation);

}  // namespace guwen::textnorm
