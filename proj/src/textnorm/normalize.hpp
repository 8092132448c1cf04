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
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace guwen::textnorm {

enum class UnicodeForm { kComposedCanonical };

enum class ScriptMapping { kPreserve, kToSimplified, kToTraditional };

struct NormPolicy {
  UnicodeForm unicode_form = UnicodeForm::kComposedCanonical;
  bool width_folding = true;
  ScriptMapping script_mapping = ScriptMapping::kPreserve;
  bool strip_controls = true;
};

std::optional<ScriptMapping> script_mapping_from_string(std::string_view name);
std::string_view to_string(ScriptMapping mapping);

class ScriptTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-to-one traditional -> simplified character table. The inverse direction
// uses the same pairs, so the table is rejected if it is not injective or if a
// target also appears as a source.
class ScriptTable {
 public:
  ScriptTable() = default;
  explicit ScriptTable(std::vector<std::pair<char32_t, char32_t>> pairs);

  static const ScriptTable& builtin();
  // `source_char<TAB>target_char` per line; '#' comments and blank lines skipped.
  static ScriptTable parse(std::string_view text);
  static ScriptTable load(const std::filesystem::path& path);

  std::optional<char32_t> to_simplified(char32_t cp) const;
  std::optional<char32_t> to_traditional(char32_t cp) const;
  bool covers(char32_t cp) const;

  const std::vector<std::pair<char32_t, char32_t>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<char32_t, char32_t>> pairs_;
  std::unordered_map<char32_t, char32_t> forward_;
  std::unordered_map<char32_t, char32_t> backward_;
};

struct NormResult {
  std::string text;
  // CJK ideographs the script table does not know, when a mapping is active.
  std::size_t unmapped = 0;
  std::size_t controls_removed = 0;
};

NormResult normalize(std::string_view raw, const NormPolicy& policy,
                     const ScriptTable& table = ScriptTable::builtin());

inline std::string normalize_text(std::string_view raw, const NormPolicy& policy = {},
                                  const ScriptTable& table = ScriptTable::builtin()) {
  return normalize(raw, policy, table).text;
}

// Composed-canonical form only; exposed for callers that skip the other steps.
std::u32string compose_canonical(std::u32string_view text);

}  // namespace guwen::textnorm
