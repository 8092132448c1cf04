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

#include <doctest.h>

#include <set>

#include "support/gen.hpp"
#include "textnorm/normalize.hpp"
#include "textnorm/punct.hpp"
#include "util/utf8.hpp"

using namespace guwen;
using namespace guwen::textnorm;

namespace {

const char* kCase1 = "四年春，衞州吁弑桓公而立。";

std::string random_messy_text(testing::Gen& g, std::size_t n) {
  static const std::vector<std::string> kPieces = {
      "四", "年", "春", "衞", "國", "国", "學", "学", "字", "a", "Z", "3", "0", "Ａ", "ｂ", "９",
      ",", ".", ";", ":", "?", "!", "(", ")", "\"", "'", " ", "\n", "\t", "\r", "\x01", "\x7f",
      "，", "。", "“", "”", "——", "…", "e\xcc\x81", "\xcc\x81", "\xef\xbd\xa1", "\xef\xbd\xa4",
      "\xef\xbb\xbf", "\xe2\x80\x8b", "\xef\xa4\x80", "\xc3\xa9", "\xf0\xa0\x80\x80"};
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += g.pick(kPieces);
  return out;
}

}  // namespace

TEST_CASE("normalize leaves a clean punctuated sentence unchanged") {
  NormPolicy preserve;
  CHECK(normalize_text(kCase1, preserve) == kCase1);
}

TEST_CASE("width folding turns a half-width comma into a full-width one") {
  NormPolicy policy;
  policy.width_folding = true;
  CHECK(normalize_text(",", policy) == "，");
  CHECK(normalize_text("天下,福也.", policy) == "天下，福也。");
  CHECK(normalize_text("ＡＢ１２", policy) == "AB12");
  CHECK(normalize_text("3,000", policy) == "3,000");
  CHECK(normalize_text("Answer: x", policy) == "Answer: x");
  CHECK(normalize_text("曰\"善\"", policy) == "曰“善”");
  policy.width_folding = false;
  CHECK(normalize_text(",", policy) == ",");
}

TEST_CASE("script mapping to simplified uses the character table") {
  NormPolicy policy;
  policy.script_mapping = ScriptMapping::kToSimplified;
  CHECK(normalize_text("衞", policy) == "卫");
  auto r = normalize(kCase1, policy);
  CHECK(r.text == "四年春，卫州吁弑桓公而立。");
  CHECK(r.unmapped > 0);  // 州, 吁 ... are not in the table

  policy.script_mapping = ScriptMapping::kToTraditional;
  CHECK(normalize_text("卫国", policy) == "衞國");
}

TEST_CASE("controls are stripped and counted") {
  NormPolicy policy;
  auto r = normalize("天\x08下\xef\xbb\xbf福", policy);
  CHECK(r.text == "天下福");
  CHECK(r.controls_removed == 2);
  policy.strip_controls = false;
  CHECK(normalize_text("天\x08下", policy) == "天\x08下");
}

TEST_CASE("composed canonical form is applied") {
  CHECK(normalize_text("e\xcc\x81") == "\xc3\xa9");
  // CJK compatibility ideograph U+F900 has a canonical singleton mapping.
  CHECK(normalize_text("\xef\xa4\x80") == "\xe8\xb1\x88");
}

TEST_CASE("normalization is total on invalid UTF-8") {
  CHECK(normalize_text("\xff\xfe\x80") == "\xef\xbf\xbd\xef\xbf\xbd\xef\xbf\xbd");
}

TEST_CASE("property: normalization is idempotent for every policy") {
  testing::Gen g(7);
  std::vector<NormPolicy> policies;
  for (bool fold : {false, true}) {
    for (auto map : {ScriptMapping::kPreserve, ScriptMapping::kToSimplified, ScriptMapping::kToTraditional}) {
      for (bool strip : {false, true}) {
        NormPolicy p;
        p.width_folding = fold;
        p.script_mapping = map;
        p.strip_controls = strip;
        policies.push_back(p);
      }
    }
  }
  for (int trial = 0; trial < 600; ++trial) {
    const auto text = random_messy_text(g, g.below(24));
    for (const auto& p : policies) {
      const auto once = normalize_text(text, p);
      const auto twice = normalize_text(once, p);
      REQUIRE_MESSAGE(once == twice, "input: " << text);
    }
  }
}

TEST_CASE("property: script table is a bijection on its mapped subset") {
  const auto& table = ScriptTable::builtin();
  REQUIRE(table.pairs().size() > 50);
  for (auto [trad, simp] : table.pairs()) {
    CHECK(table.to_simplified(trad) == simp);
    CHECK(table.to_traditional(simp) == trad);
    CHECK(table.to_traditional(*table.to_simplified(trad)) == trad);
  }
}

TEST_CASE("script table rejects non-injective or chained files") {
  CHECK_THROWS_AS(ScriptTable::parse("衞\t卫\n衛\t卫\n"), ScriptTableError);
  CHECK_THROWS_AS(ScriptTable::parse("甲\t乙\n乙\t丙\n"), ScriptTableError);
  CHECK_THROWS_AS(ScriptTable::parse("甲乙\t丙\n"), ScriptTableError);
  auto t = ScriptTable::parse("# comment\n衞\t卫\n");
  CHECK(t.to_simplified(U'衞') == U'卫');
}

TEST_CASE("the default inventory has fourteen disjoint classes") {
  const auto& inv = PunctInventory::builtin();
  REQUIRE(inv.classes().size() == 14);
  std::set<char32_t> seen;
  for (const auto& cls : inv.classes()) {
    for (const auto& member : cls.members) {
      for (char32_t cp : member) {
        CHECK(inv.classify(cp) == &cls);
        seen.insert(cp);
      }
    }
  }
  CHECK(inv.find("double_quote")->paired);
  CHECK_FALSE(inv.find("comma")->paired);
  // The inventory text form round-trips through the parser.
  CHECK(PunctInventory::parse(inv.to_text()).to_text() == inv.to_text());
}

TEST_CASE("classify_punct") {
  const auto& inv = PunctInventory::builtin();
  REQUIRE(inv.classify(U'，') != nullptr);
  CHECK(inv.classify(U'，')->id == "comma");
  CHECK(inv.classify(U'。')->id == "period");
  CHECK(inv.classify(U'春') == nullptr);
}

TEST_CASE("inventory files with overlapping classes are rejected") {
  CHECK_THROWS_AS(PunctInventory::parse("a\t，\tsingle\nb\t， 。\tsingle\n"), InventoryError);
  CHECK_THROWS_AS(PunctInventory::parse("a\t，\tboth\n"), InventoryError);
  CHECK_THROWS_AS(PunctInventory::parse("a\t，\n"), InventoryError);
  auto inv = PunctInventory::parse("stop\t. 。\tsingle\n");
  CHECK(inv.classes().size() == 1);
}

TEST_CASE("strip_punctuation examples") {
  auto a = strip_punctuation(kCase1);
  CHECK(a.base_text == "四年春衞州吁弑桓公而立");
  CHECK(utf8::length(a.base_text) == 11);
  REQUIRE(a.marks.size() == 2);
  CHECK(a.marks[0] == PunctMark{3, "comma", "，"});
  CHECK(a.marks[1] == PunctMark{11, "period", "。"});

  auto empty = strip_punctuation("");
  CHECK(empty.base_text.empty());
  CHECK(empty.marks.empty());

  auto b = strip_punctuation("天下福也。");
  CHECK(b.base_text == "天下福也");
  REQUIRE(b.marks.size() == 1);
  CHECK(b.marks[0] == PunctMark{4, "period", "。"});
}

TEST_CASE("multi-codepoint marks are matched longest first") {
  auto a = strip_punctuation("曰——善……也—");
  CHECK(a.base_text == "曰善也");
  REQUIRE(a.marks.size() == 3);
  CHECK(a.marks[0] == PunctMark{1, "dash", "——"});
  CHECK(a.marks[1] == PunctMark{2, "ellipsis", "……"});
  CHECK(a.marks[2] == PunctMark{3, "dash", "—"});
  // Three dashes: the doubled mark then a single one.
  CHECK(strip_punctuation("———").marks.size() == 2);
}

TEST_CASE("non-inventory symbols stay in the base text") {
  auto a = strip_punctuation("天下,福【也】");
  CHECK(a.base_text == "天下,福【也】");
  CHECK(a.marks.empty());
}

TEST_CASE("property: reinsert(strip(t)) == t") {
  testing::Gen g(11);
  std::vector<std::string> marks;
  for (const auto& cls : PunctInventory::builtin().classes()) {
    for (const auto& m : cls.members) marks.push_back(utf8::encode(m));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    const auto n = g.below(30);
    for (std::size_t i = 0; i < n; ++i) text += g.coin(0.35) ? g.pick(marks) : g.ideographs(1);
    auto a = strip_punctuation(text);
    REQUIRE(reinsert(a) == text);
    for (std::size_t i = 1; i < a.marks.size(); ++i) REQUIRE(a.marks[i - 1].offset <= a.marks[i].offset);
    for (const auto& m : a.marks) REQUIRE(m.offset <= utf8::length(a.base_text));
  }
}
