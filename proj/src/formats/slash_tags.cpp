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

#include "formats/slash_tags.hpp"

#include "util/utf8.hpp"

namespace guwen::formats {
namespace {

constexpr std::array<std::string_view, 17> kDescriptions = {
    "Proper Noun (Person)", "Verb",         "Noun",           "Pronoun",       "Punctuation",
    "Conjunction",          "Preposition",  "Adverb",         "Time word",     "Modal Particle",
    "Auxiliary word",       "Numeral",      "Adjective",      "Locality Word", "Proper Noun (Place)",
    "Abbreviation",         "Quantifier"};

bool has_space(std::string_view s) {
  for (char32_t cp : utf8::decode(s)) {
    if (chars::is_space(cp)) return true;
  }
  return false;
}

}  // namespace

std::optional<PosTag> pos_tag_from_code(std::string_view code) {
  for (std::size_t i = 0; i < kPosTagCodes.size(); ++i) {
    if (kPosTagCodes[i] == code) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

std::string_view code(PosTag tag) { return kPosTagCodes[static_cast<std::size_t>(tag)]; }

std::string_view description(PosTag tag) { return kDescriptions[static_cast<std::size_t>(tag)]; }

TaggedSequence parse_slash_tags(std::string_view line, bool strict) {
  TaggedSequence out;
  const auto cps = utf8::decode(line);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && chars::is_space(cps[i])) ++i;
    if (i >= cps.size()) break;
    std::size_t j = i;
    while (j < cps.size() && !chars::is_space(cps[j])) ++j;
    const std::u32string_view token(cps.data() + i, j - i);
    i = j;

    const std::string token_text = utf8::encode(token);
    const auto slash = token.rfind(U'/');
    if (slash == std::u32string_view::npos) {
      throw FormatError(FormatErrorKind::kMissingSlash, token_text, "token without '/': " + token_text);
    }
    if (slash == 0) {
      throw FormatError(FormatErrorKind::kEmptySegment, token_text, "empty segment in token: " + token_text);
    }
    TaggedItem item;
    item.segment = utf8::encode(token.substr(0, slash));
    item.tag = utf8::encode(token.substr(slash + 1));
    item.known = pos_tag_from_code(item.tag).has_value();
    if (!item.known && strict) {
      throw FormatError(FormatErrorKind::kUnknownTag, token_text,
                        "unknown tag '" + item.tag + "' in token: " + token_text);
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::string serialize_slash_tags(const TaggedSequence& seq) {
  std::string out;
  for (const auto& item : seq) {
    if (item.segment.empty() || item.segment.find('/') != std::string::npos || has_space(item.segment)) {
      throw FormatError(FormatErrorKind::kInvalidSegment, item.segment, "invalid segment: '" + item.segment + "'");
    }
    if (item.tag.find('/') != std::string::npos || has_space(item.tag)) {
      throw FormatError(FormatErrorKind::kInvalidSegment, item.tag, "invalid tag: '" + item.tag + "'");
    }
    if (!out.empty()) out += ' ';
    out += item.segment;
    out += '/';
    out += item.tag;
  }
  return out;
}

std::string join_segments(const TaggedSequence& seq) {
  std::string out;
  for (const auto& item : seq) out += item.segment;
  return out;
}

}  // namespace guwen::formats
