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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formats/error.hpp"

namespace guwen::formats {

// The seventeen part-of-speech categories of the benchmark tag set.
enum class PosTag : std::uint8_t { nr, v, n, r, w, c, p, d, t, y, u, m, a, f, ns, j, q };

inline constexpr std::array<std::string_view, 17> kPosTagCodes = {
    "nr", "v", "n", "r", "w", "c", "p", "d", "t", "y", "u", "m", "a", "f", "ns", "j", "q"};

std::optional<PosTag> pos_tag_from_code(std::string_view code);
std::string_view code(PosTag tag);
std::string_view description(PosTag tag);

struct TaggedItem {
  std::string segment;
  std::string tag;
  // False only for tags outside the closed set, which lenient parsing keeps.
  bool known = true;

  bool operator==(const TaggedItem&) const = default;
};

using TaggedSequence = std::vector<TaggedItem>;

// Splits on whitespace runs (ASCII and U+3000), then each token at its last
// '/'. Throws FormatError: kMissingSlash, kEmptySegment, and kUnknownTag in
// strict mode.
TaggedSequence parse_slash_tags(std::string_view line, bool strict = true);

// Throws FormatError(kInvalidSegment) for segments holding '/' or whitespace.
std::string serialize_slash_tags(const TaggedSequence& seq);

// Concatenated segments, i.e. the sentence the tags annotate.
std::string join_segments(const TaggedSequence& seq);

}  // namespace guwen::formats
