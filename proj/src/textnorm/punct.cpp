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

#include "textnorm/punct.hpp"

#include <algorithm>

#include "util/io.hpp"
#include "util/utf8.hpp"

namespace guwen::textnorm {
namespace {

constexpr std::string_view kDefaultInventory =
    "comma\t，\tsingle\n"
    "period\t。\tsingle\n"
    "enumeration_comma\t、\tsingle\n"
    "semicolon\t；\tsingle\n"
    "colon\t：\tsingle\n"
    "question\t？\tsingle\n"
    "exclamation\t！\tsingle\n"
    "double_quote\t“ ” 「 」\tpaired\n"
    "single_quote\t‘ ’ 『 』\tpaired\n"
    "book_title\t《 》 〈 〉\tpaired\n"
    "parenthesis\t（ ）\tpaired\n"
    "dash\t—— —\tsingle\n"
    "ellipsis\t…… …\tsingle\n"
    "middle_dot\t· ・\tsingle\n";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

PunctInventory::PunctInventory(std::vector<PunctClass> classes) : classes_(std::move(classes)) {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto& cls = classes_[c];
    if (cls.id.empty()) throw InventoryError("punctuation class with empty id");
    if (cls.members.empty()) throw InventoryError("punctuation class '" + cls.id + "' has no members");
    for (std::size_t m = 0; m < cls.members.size(); ++m) {
      const auto& member = cls.members[m];
      if (member.empty()) throw InventoryError("empty member in class '" + cls.id + "'");
      for (char32_t cp : member) {
        auto [it, inserted] = owner_.emplace(cp, c);
        if (!inserted && it->second != c) {
          throw InventoryError("codepoint " + utf8::encode_one(cp) + " claimed by both '" +
                               classes_[it->second].id + "' and '" + cls.id + "'");
        }
      }
      by_head_[member.front()].emplace_back(c, m);
    }
  }
  for (std::size_t a = 0; a < classes_.size(); ++a) {
    for (std::size_t b = a + 1; b < classes_.size(); ++b) {
      if (classes_[a].id == classes_[b].id) throw InventoryError("duplicate class id '" + classes_[a].id + "'");
    }
  }
  for (auto& [head, candidates] : by_head_) {
    std::stable_sort(candidates.begin(), candidates.end(), [this](auto x, auto y) {
      return classes_[x.first].members[x.second].size() > classes_[y.first].members[y.second].size();
    });
  }
}

const PunctInventory& PunctInventory::builtin() {
  static const PunctInventory inventory = parse(kDefaultInventory);
  return inventory;
}

PunctInventory PunctInventory::parse(std::string_view text) {
  std::vector<PunctClass> classes;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw InventoryError("inventory line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
    }
    PunctClass cls;
    cls.id = std::string(fields[0]);
    for (auto surface : split(fields[1], ' ')) {
      if (surface.empty()) continue;
      if (!utf8::is_valid(surface)) {
        throw InventoryError("inventory line " + std::to_string(line_no) + ": invalid UTF-8");
      }
      cls.members.push_back(utf8::decode(surface));
    }
    if (fields[2] == "paired") {
      cls.paired = true;
    } else if (fields[2] != "single") {
      throw InventoryError("inventory line " + std::to_string(line_no) + ": expected paired|single");
    }
    classes.push_back(std::move(cls));
  }
  return PunctInventory(std::move(classes));
}

PunctInventory PunctInventory::load(const std::filesystem::path& path) {
  return parse(io::read_file(path));
}

std::string PunctInventory::to_text() const {
  std::string out;
  for (const auto& cls : classes_) {
    out += cls.id;
    out += '\t';
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
      if (i) out += ' ';
      out += utf8::encode(cls.members[i]);
    }
    out += cls.paired ? "\tpaired\n" : "\tsingle\n";
  }
  return out;
}

const PunctClass* PunctInventory::classify(char32_t cp) const {
  auto it = owner_.find(cp);
  return it == owner_.end() ? nullptr : &classes_[it->second];
}

const PunctClass* PunctInventory::find(std::string_view class_id) const {
  for (const auto& cls : classes_) {
    if (cls.id == class_id) return &cls;
  }
  return nullptr;
}

std::optional<PunctMatch> PunctInventory::match_at(std::u32string_view text, std::size_t pos) const {
  if (pos >= text.size()) return std::nullopt;
  auto it = by_head_.find(text[pos]);
  if (it == by_head_.end()) return std::nullopt;
  for (auto [c, m] : it->second) {
    const auto& member = classes_[c].members[m];
    if (text.substr(pos, member.size()) == member) return PunctMatch{&classes_[c], member.size()};
  }
  return std::nullopt;
}

PunctAnnotation strip_punctuation(std::string_view text, const PunctInventory& inventory) {
  const auto cps = utf8::decode(text);
  PunctAnnotation out;
  out.base_text.reserve(text.size());
  std::size_t base_len = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (auto match = inventory.match_at(cps, i)) {
      out.marks.push_back(PunctMark{base_len, match->cls->id,
                                    utf8::encode(std::u32string_view(cps).substr(i, match->length))});
      i += match->length;
    } else {
      utf8::append(out.base_text, cps[i]);
      ++base_len;
      ++i;
    }
  }
  return out;
}

std::string reinsert(const PunctAnnotation& annotation) {
  const auto base = utf8::decode(annotation.base_text);
  std::string out;
  out.reserve(annotation.base_text.size() + annotation.marks.size() * 3);
  std::size_t next_mark = 0;
  for (std::size_t i = 0; i <= base.size(); ++i) {
    while (next_mark < annotation.marks.size() && annotation.marks[next_mark].offset == i) {
      out += annotation.marks[next_mark++].surface;
    }
    if (i < base.size()) utf8::append(out, base[i]);
  }
  // Offsets past the end are clamped onto the tail.
  for (; next_mark < annotation.marks.size(); ++next_mark) out += annotation.marks[next_mark].surface;
  return out;
}

}  // namespace guwen::textnorm
