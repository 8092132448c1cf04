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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formats/error.hpp"

namespace guwen::formats {

enum class EntityCategory : std::uint8_t { kCharacters, kPlace, kTime, kOfficialPositions };

inline constexpr std::array<EntityCategory, 4> kEntityCategories = {
    EntityCategory::kCharacters, EntityCategory::kPlace, EntityCategory::kTime,
    EntityCategory::kOfficialPositions};

// Keys exactly as they appear in the structured answer format.
std::string_view key(EntityCategory category);

struct EntitySet {
  std::array<std::vector<std::string>, 4> lists;

  std::vector<std::string>& operator[](EntityCategory c) { return lists[static_cast<std::size_t>(c)]; }
  const std::vector<std::string>& operator[](EntityCategory c) const {
    return lists[static_cast<std::size_t>(c)];
  }
  bool empty() const;
  std::size_t size() const;

  bool operator==(const EntitySet&) const = default;
};

// Maps answer keys to categories. Lookup ignores ASCII case, whitespace,
// underscores, hyphens and quotes, so "' characters'" and "Official_Positions"
// both resolve.
class EntityKeyAliases {
 public:
  static const EntityKeyAliases& builtin();
  // `alias<TAB>category key` per line, on top of the built-in aliases.
  static EntityKeyAliases parse(std::string_view text);
  static EntityKeyAliases load(const std::filesystem::path& path);

  void add(std::string_view alias, EntityCategory category);
  std::optional<EntityCategory> lookup(std::string_view key) const;

 private:
  std::map<std::string, EntityCategory> table_;
};

// Accepts the quoted-list answer format ('characters': [...], ...) and JSON
// objects with the same keys, anywhere inside surrounding prose. Missing
// categories are empty; the last occurrence of a repeated key wins. Throws
// FormatError(kNoStructureFound) when no category key with a list is found.
EntitySet parse_entity_output(std::string_view text, const EntityKeyAliases& aliases = EntityKeyAliases::builtin());

// Canonical quoted-list form: 'characters': ['赵承庆'], 'place': [], ...
std::string serialize_entities(const EntitySet& set);

}  // namespace guwen::formats
