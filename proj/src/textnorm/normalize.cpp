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

#include "textnorm/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "util/io.hpp"
#include "util/utf8.hpp"

namespace guwen::textnorm {
namespace {

// Traditional -> simplified pairs restricted to one-to-one correspondences.
constexpr std::u32string_view kBuiltinPairs =
    U"衞卫國国學学說说殺杀為为與与書书時时東东車车馬马長长門门問问見见貝贝頁页風风"
    U"飛飞魚鱼鳥鸟龍龙龜龟齊齐語语讀读記记詩诗話话請请謂谓論论議议貴贵賢贤買买賣卖"
    U"軍军農农無无氣气漢汉當当對对將将歲岁歷历實实寶宝聖圣樂乐禮礼義义親亲愛爱聽听"
    U"觀观顏颜陽阳陰阴雙双壽寿萬万鄉乡閑闲歸归廣广從从眾众傳传僅仅億亿優优興兴靜静"
    U"劍剑戰战鐵铁錢钱銀银鏡镜開开關关間间陳陈隊队難难雞鸡雜杂離离頭头題题顯显類类"
    U"飲饮飯饭館馆驚惊體体黃黄齒齿";

bool is_ascii_fold_punct(char32_t cp) {
  switch (cp) {
    case U',':
    case U';':
    case U':':
    case U'?':
    case U'!':
    case U'(':
    case U')':
      return true;
    default:
      return false;
  }
}

char32_t fullwidth_of(char32_t cp) { return cp - 0x21 + 0xFF01; }

bool is_fullwidth_alnum(char32_t cp) {
  return (cp >= 0xFF10 && cp <= 0xFF19) || (cp >= 0xFF21 && cp <= 0xFF3A) || (cp >= 0xFF41 && cp <= 0xFF5A);
}

bool is_latin_or_fullwidth_alnum(char32_t cp) { return chars::is_latin_alnum(cp) || is_fullwidth_alnum(cp); }

// Width folding. Fullwidth Latin letters and digits become ASCII; half-width
// CJK punctuation becomes full-width. ASCII marks fold unless they follow a
// Latin letter or digit (so "3,000" and "Answer:" survive); '.' folds only
// after an ideograph and '"' only next to one. Every condition looks at input
// neighbours whose class folding cannot change, which keeps the pass idempotent.
std::u32string fold_width(std::u32string_view in) {
  std::u32string out;
  out.reserve(in.size());
  bool quote_open = false;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const char32_t cp = in[i];
    const char32_t prev = i > 0 ? in[i - 1] : 0;
    const char32_t next = i + 1 < in.size() ? in[i + 1] : 0;
    if (is_fullwidth_alnum(cp)) {
      out.push_back(cp - 0xFF01 + 0x21);
    } else if (is_ascii_fold_punct(cp)) {
      out.push_back(is_latin_or_fullwidth_alnum(prev) ? cp : fullwidth_of(cp));
    } else if (cp == U'.') {
      out.push_back(chars::is_cjk_ideograph(prev) ? U'。' : cp);
    } else if (cp == U'"') {
      if (chars::is_cjk_ideograph(prev) || chars::is_cjk_ideograph(next)) {
        out.push_back(quote_open ? U'”' : U'“');
        quote_open = !quote_open;
      } else {
        out.push_back(cp);
      }
    } else {
      switch (cp) {
        case 0xFF61: out.push_back(U'。'); break;
        case 0xFF62: out.push_back(U'「'); break;
        case 0xFF63: out.push_back(U'」'); break;
        case 0xFF64: out.push_back(U'、'); break;
        case 0xFF65: out.push_back(U'・'); break;
        default: out.push_back(cp);
      }
    }
  }
  return out;
}

}  // namespace

std::optional<ScriptMapping> script_mapping_from_string(std::string_view name) {
  if (name == "preserve") return ScriptMapping::kPreserve;
  if (name == "to-simplified") return ScriptMapping::kToSimplified;
  if (name == "to-traditional") return ScriptMapping::kToTraditional;
  return std::nullopt;
}

std::string_view to_string(ScriptMapping mapping) {
  switch (mapping) {
    case ScriptMapping::kPreserve: return "preserve";
    case ScriptMapping::kToSimplified: return "to-simplified";
    case ScriptMapping::kToTraditional: return "to-traditional";
  }
  return "preserve";
}

ScriptTable::ScriptTable(std::vector<std::pair<char32_t, char32_t>> pairs) : pairs_(std::move(pairs)) {
  for (auto [src, dst] : pairs_) {
    if (src == dst) throw ScriptTableError("identity entry for " + utf8::encode_one(src));
    if (!forward_.emplace(src, dst).second) {
      throw ScriptTableError("duplicate source " + utf8::encode_one(src));
    }
    if (!backward_.emplace(dst, src).second) {
      throw ScriptTableError("target " + utf8::encode_one(dst) + " has more than one source");
    }
  }
  for (auto [src, dst] : pairs_) {
    if (forward_.contains(dst)) throw ScriptTableError("chained entry through " + utf8::encode_one(dst));
  }
}

const ScriptTable& ScriptTable::builtin() {
  static const ScriptTable table = [] {
    std::vector<std::pair<char32_t, char32_t>> pairs;
    for (std::size_t i = 0; i + 1 < kBuiltinPairs.size(); i += 2) {
      pairs.emplace_back(kBuiltinPairs[i], kBuiltinPairs[i + 1]);
    }
    return ScriptTable(std::move(pairs));
  }();
  return table;
}

ScriptTable ScriptTable::parse(std::string_view text) {
  std::vector<std::pair<char32_t, char32_t>> pairs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ScriptTableError("script table line " + std::to_string(line_no) + ": missing tab");
    }
    auto src = utf8::decode(line.substr(0, tab));
    auto dst = utf8::decode(line.substr(tab + 1));
    if (src.size() != 1 || dst.size() != 1) {
      throw ScriptTableError("script table line " + std::to_string(line_no) + ": expected single characters");
    }
    pairs.emplace_back(src[0], dst[0]);
  }
  return ScriptTable(std::move(pairs));
}

ScriptTable ScriptTable::load(const std::filesystem::path& path) { return parse(io::read_file(path)); }

std::optional<char32_t> ScriptTable::to_simplified(char32_t cp) const {
  auto it = forward_.find(cp);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<char32_t> ScriptTable::to_traditional(char32_t cp) const {
  auto it = backward_.find(cp);
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

bool ScriptTable::covers(char32_t cp) const { return forward_.contains(cp) || backward_.contains(cp); }

std::u32string compose_canonical(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::u32string(text);
  auto src = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(text.data()),
                                           static_cast<int32_t>(text.size()));
  if (nfc->isNormalized(src, status) && U_SUCCESS(status)) return std::u32string(text);
  status = U_ZERO_ERROR;
  icu::UnicodeString dst = nfc->normalize(src, status);
  if (U_FAILURE(status)) return std::u32string(text);
  std::u32string out(static_cast<std::size_t>(dst.countChar32()), U'\0');
  status = U_ZERO_ERROR;
  dst.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()), status);
  return out;
}

NormResult normalize(std::string_view raw, const NormPolicy& policy, const ScriptTable& table) {
  NormResult result;
  std::u32string text = utf8::decode(raw);
  if (policy.strip_controls) {
    std::u32string kept;
    kept.reserve(text.size());
    for (char32_t cp : text) {
      if (chars::is_strippable_control(cp)) {
        ++result.controls_removed;
      } else {
        kept.push_back(cp);
      }
    }
    text = std::move(kept);
  }
  text = compose_canonical(text);
  if (policy.width_folding) text = fold_width(text);
  if (policy.script_mapping != ScriptMapping::kPreserve) {
    const bool simplify = policy.script_mapping == ScriptMapping::kToSimplified;
    for (char32_t& cp : text) {
      if (!chars::is_cjk_ideograph(cp)) continue;
      auto mapped = simplify ? table.to_simplified(cp) : table.to_traditional(cp);
      if (mapped) {
        cp = *mapped;
      } else if (!table.covers(cp)) {
        ++result.unmapped;
      }
    }
  }
  text = compose_canonical(text);
  result.text = utf8::encode(text);
  return result;
}

}  // namespace guwen::textnorm
