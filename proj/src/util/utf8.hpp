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
#include <string>
#include <string_view>

namespace guwen::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Strict validation: rejects overlong forms, surrogates and values past U+10FFFF.
bool is_valid(std::string_view bytes);

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);
std::string encode_one(char32_t cp);

std::size_t length(std::string_view bytes);

}  // namespace guwen::utf8

namespace guwen::chars {

bool is_cjk_ideograph(char32_t cp);
bool is_space(char32_t cp);
// Cc controls other than tab and newline, plus BOM and zero-width space.
bool is_strippable_control(char32_t cp);
// U+FFFD and Unicode noncharacters.
bool is_invalid(char32_t cp);
bool is_digit(char32_t cp);
bool is_latin_alnum(char32_t cp);

}  // namespace guwen::chars
