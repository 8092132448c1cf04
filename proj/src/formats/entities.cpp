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

#include "formats/entities.hpp"

#include <json.hpp>

#include "util/io.hpp"
#include "util/utf8.hpp"

namespace guwen::formats {
namespace {

bool is_quote(char32_t cp) {
  switch (cp) {
    case U'\'':
    case U'"':
    case U'‘':
    case U'’':
    case U'“':
    case U'”':
    case U'「':
    case U'」':
    case U'`':
      return true;
    default:
      return false;
  }
}

char32_t closing_quote(char32_t open) {
  switch (open) {
    case U'‘': return U'’';
    case U'“': return U'”';
    case U'「': return U'」';
    default: return open;
  }
}

bool is_colon(char32_t cp) { return cp == U':' || cp == U'：'; }
bool is_open_bracket(char32_t cp) { return cp == U'[' || cp == U'［'; }
bool is_close_bracket(char32_t cp) { return cp == U']' || cp == U'］'; }
bool is_item_separator(char32_t cp) { return cp == U',' || cp == U'，' || cp == U'、' || cp == U';' || cp == U'；'; }
bool is_key_boundary(char32_t cp) {
  return cp == U'{' || cp == U'}' || cp == U'\n' || is_item_separator(cp) || is_open_bracket(cp) ||
         is_close_bracket(cp) || is_colon(cp) || cp == U'｛' || cp == U'｝';
}

std::string normalize_key(std::string_view key) {
  std::string out;
  for (char32_t cp : utf8::decode(key)) {
    if (chars::is_space(cp) || cp == U'_' || cp == U'-' || is_quote(cp)) continue;
    if (cp >= U'A' && cp <= U'Z') cp = cp - U'A' + U'a';
    utf8::append(out, cp);
  }
  return out;
}

std::u32string trim(std::u32string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && chars::is_space(s[b])) ++b;
  while (e > b && chars::is_space(s[e - 1])) --e;
  return std::u32string(s.substr(b, e - b));
}

bool is_placeholder(std::u32string_view item) {
  if (item.empty()) return true;
  for (char32_t cp : item) {
    if (cp != U'.' && cp != U'…' && cp != U'。') return false;
  }
  return true;
}

void push_item(std::vector<std::string>& out, std::u32string_view raw) {
  auto item = trim(raw);
  if (!is_placeholder(item)) out.push_back(utf8::encode(item));
}

// Parses the list whose '[' is at cps[open]; returns the index just past the
// closing bracket (or the end of input).
std::size_t parse_list(const std::u32string& cps, std::size_t open, std::vector<std::string>& items) {
  std::size_t i = open + 1;
  while (i < cps.size()) {
    while (i < cps.size() && (chars::is_space(cps[i]) || is_item_separator(cps[i]))) ++i;
    if (i >= cps.size()) break;
    if (is_close_bracket(cps[i])) return i + 1;
    if (is_quote(cps[i])) {
      const char32_t close = closing_quote(cps[i]);
      std::size_t j = i + 1;
      while (j < cps.size() && cps[j] != close && !(close == U'’' && cps[j] == U'\'')) ++j;
      push_item(items, std::u32string_view(cps).substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < cps.size() && !is_item_separator(cps[j]) && !is_close_bracket(cps[j])) ++j;
      push_item(items, std::u32string_view(cps).substr(i, j - i));
      i = j;
    }
  }
  return cps.size();
}

// Reads the key ending just before the colon that precedes cps[bracket].
std::optional<std::u32string> key_before(const std::u32string& cps, std::size_t bracket) {
  std::size_t j = bracket;
  while (j > 0 && chars::is_space(cps[j - 1])) --j;
  if (j == 0 || !is_colon(cps[j - 1])) return std::nullopt;
  --j;
  while (j > 0 && chars::is_space(cps[j - 1])) --j;
  if (j == 0) return std::nullopt;
  if (is_quote(cps[j - 1])) {
    const std::size_t end = j - 1;
    std::size_t k = end;
    while (k > 0 && !is_quote(cps[k - 1]) && cps[k - 1] != U'\n') --k;
    if (k == 0 || !is_quote(cps[k - 1])) return std::nullopt;
    return std::u32string(cps.substr(k, end - k));
  }
  const std::size_t end = j;
  std::size_t k = end;
  while (k > 0 && !is_key_boundary(cps[k - 1])) --k;
  return trim(std::u32string_view(cps).substr(k, end - k));
}

std::optional<EntitySet> parse_json_object(std::string_view text, const EntityKeyAliases& aliases) {
  auto start = text.find('{');
  auto end = text.rfind('}');
  if (start == std::string_view::npos || end == std::string_view::npos || end < start) return std::nullopt;
  auto doc = nlohmann::json::parse(text.substr(start, end - start + 1), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  EntitySet set;
  bool found = false;
  for (const auto& [k, v] : doc.items()) {
    auto category = aliases.lookup(k);
    if (!category) continue;
    found = true;
    auto& list = set[*category];
    list.clear();
    if (v.is_array()) {
      for (const auto& item : v) {
        if (item.is_string()) push_item(list, utf8::decode(item.get<std::string>()));
      }
    } else if (v.is_string()) {
      push_item(list, utf8::decode(v.get<std::string>()));
    }
  }
  if (!found) return std::nullopt;
  return set;
}

}  // namespace

std::string_view key(EntityCategory category) {
  switch (category) {
    case EntityCategory::kCharacters: return "characters";
    case EntityCategory::kPlace: return "place";
    case EntityCategory::kTime: return "time";
    case EntityCategory::kOfficialPositions: return "official positions";
  }
  return "";
}

bool EntitySet::empty() const { return size() == 0; }

std::size_t EntitySet::size() const {
  std::size_t n = 0;
  for (const auto& l : lists) n += l.size();
  return n;
}

const EntityKeyAliases& EntityKeyAliases::builtin() {
  static const EntityKeyAliases aliases = [] {
    EntityKeyAliases a;
    for (auto k : {"characters", "character", "person", "persons", "people", "name", "names", "人物", "人名"}) {
      a.add(k, EntityCategory::kCharacters);
    }
    for (auto k : {"place", "places", "location", "locations", "地点", "地名"}) a.add(k, EntityCategory::kPlace);
    for (auto k : {"time", "times", "date", "时间"}) a.add(k, EntityCategory::kTime);
    for (auto k : {"official positions", "official position", "official titles", "official title", "official",
                   "官职", "职官"}) {
      a.add(k, EntityCategory::kOfficialPositions);
    }
    return a;
  }();
  return aliases;
}

EntityKeyAliases EntityKeyAliases::parse(std::string_view text) {
  EntityKeyAliases out = builtin();
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    std::optional<EntityCategory> category;
    if (tab != std::string_view::npos) {
      const auto wanted = normalize_key(line.substr(tab + 1));
      for (auto c : kEntityCategories) {
        if (normalize_key(key(c)) == wanted) category = c;
      }
    }
    if (!category) {
      throw std::invalid_argument("alias line " + std::to_string(line_no) + ": expected alias<TAB>category");
    }
    out.add(line.substr(0, tab), *category);
  }
  return out;
}

EntityKeyAliases EntityKeyAliases::load(const std::filesystem::path& path) { return parse(io::read_file(path)); }

void EntityKeyAliases::add(std::string_view alias, EntityCategory category) {
  table_[normalize_key(alias)] = category;
}

std::optional<EntityCategory> EntityKeyAliases::lookup(std::string_view k) const {
  auto it = table_.find(normalize_key(k));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

EntitySet parse_entity_output(std::string_view text, const EntityKeyAliases& aliases) {
  if (auto json = parse_json_object(text, aliases)) return *json;

  const auto cps = utf8::decode(text);
  EntitySet set;
  bool found = false;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_open_bracket(cps[i])) {
      ++i;
      continue;
    }
    auto raw_key = key_before(cps, i);
    auto category = raw_key ? aliases.lookup(utf8::encode(*raw_key)) : std::nullopt;
    if (!category) {
      ++i;
      continue;
    }
    found = true;
    std::vector<std::string> items;
    i = parse_list(cps, i, items);
    set[*category] = std::move(items);
  }
  if (!found) {
    throw FormatError(FormatErrorKind::kNoStructureFound, std::string(text.substr(0, 64)),
                      "no entity category key found");
  }
  return set;
}

std::string serialize_entities(const EntitySet& set) {
  std::string out;
  for (auto c : kEntityCategories) {
    if (!out.empty()) out += ", ";
    out += '\'';
    out += key(c);
    out += "': [";
    const auto& list = set[c];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out += ", ";
      out += '\'';
      out += list[i];
      out += '\'';
    }
    out += ']';
  }
  return out;
}

}  // namespace guwen::formats
