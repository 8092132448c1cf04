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

#include <filesystem>

#include "formats/entities.hpp"
#include "formats/records.hpp"
#include "formats/slash_tags.hpp"
#include "formats/task.hpp"
#include "support/gen.hpp"
#include "util/io.hpp"

using namespace guwen;
using namespace guwen::formats;

namespace {

constexpr const char* kGold = "四年/t 春/n ，/w 衞州吁/nr 弑/v 桓公/nr 而/c 立/v 。/w";
constexpr const char* kAcceptOutput =
    "'characters': [], 'place': ['许州'], 'time': ['天成初'], 'official positions': ['同平章事']";

EntitySet make(std::vector<std::string> c, std::vector<std::string> p, std::vector<std::string> t,
               std::vector<std::string> o) {
  EntitySet s;
  s[EntityCategory::kCharacters] = std::move(c);
  s[EntityCategory::kPlace] = std::move(p);
  s[EntityCategory::kTime] = std::move(t);
  s[EntityCategory::kOfficialPositions] = std::move(o);
  return s;
}

}  // namespace

TEST_CASE("the tag set has exactly seventeen codes") {
  CHECK(kPosTagCodes.size() == 17);
  for (auto c : kPosTagCodes) {
    auto tag = pos_tag_from_code(c);
    REQUIRE(tag);
    CHECK(code(*tag) == c);
  }
  CHECK_FALSE(pos_tag_from_code("nz"));
  CHECK(description(PosTag::ns) == "Proper Noun (Place)");
}

TEST_CASE("parse_slash_tags on the ground-truth line") {
  auto seq = parse_slash_tags(kGold);
  REQUIRE(seq.size() == 9);
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"四年", "t"}, {"春", "n"},  {"，", "w"}, {"衞州吁", "nr"}, {"弑", "v"},
      {"桓公", "nr"}, {"而", "c"}, {"立", "v"}, {"。", "w"}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(seq[i].segment == expected[i].first);
    CHECK(seq[i].tag == expected[i].second);
    CHECK(seq[i].known);
  }
  CHECK(join_segments(seq) == "四年春，衞州吁弑桓公而立。");
}

TEST_CASE("parse_slash_tags edge cases") {
  CHECK(parse_slash_tags("").empty());
  CHECK(parse_slash_tags("   \t ").empty());

  auto xunzi = parse_slash_tags("四年春/t ，/w 衞州吁/nr 杀/v 桓公/nr 而/c 立/v 。/w");
  REQUIRE(xunzi.size() == 8);
  CHECK(xunzi[0].segment == "四年春");

  // Ideographic space separates tokens too; the last slash splits.
  auto odd = parse_slash_tags("a/b/n　立/v");
  REQUIRE(odd.size() == 2);
  CHECK(odd[0].segment == "a/b");
  CHECK(odd[0].tag == "n");
}

TEST_CASE("parse_slash_tags errors") {
  auto kind_of = [](const char* line, bool strict) {
    try {
      parse_slash_tags(line, strict);
    } catch (const FormatError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of("四年 春/n", true) == static_cast<int>(FormatErrorKind::kMissingSlash));
  CHECK(kind_of("/n", true) == static_cast<int>(FormatErrorKind::kEmptySegment));
  CHECK(kind_of("四年/zz", true) == static_cast<int>(FormatErrorKind::kUnknownTag));
  CHECK(kind_of("四年/zz", false) == -1);

  auto lenient = parse_slash_tags("四年/zz 春/n", false);
  REQUIRE(lenient.size() == 2);
  CHECK_FALSE(lenient[0].known);
  CHECK(lenient[0].tag == "zz");
}

TEST_CASE("serialize_slash_tags") {
  CHECK(serialize_slash_tags({{"四年", "t", true}}) == "四年/t");
  CHECK(serialize_slash_tags(parse_slash_tags(kGold)) == kGold);
  CHECK(serialize_slash_tags({}).empty());
  CHECK_THROWS_AS(serialize_slash_tags({{"四/年", "t", true}}), FormatError);
  CHECK_THROWS_AS(serialize_slash_tags({{"四 年", "t", true}}), FormatError);
  CHECK_THROWS_AS(serialize_slash_tags({{"", "t", true}}), FormatError);
}

TEST_CASE("property: parse(serialize(x)) == x and segments concatenate") {
  testing::Gen g(3);
  for (int trial = 0; trial < 500; ++trial) {
    TaggedSequence seq;
    const auto n = g.below(15);
    for (std::size_t i = 0; i < n; ++i) {
      seq.push_back({g.ideographs(1 + g.below(3), 30), std::string(kPosTagCodes[g.below(17)]), true});
    }
    const auto line = serialize_slash_tags(seq);
    REQUIRE(parse_slash_tags(line) == seq);
    // Joining segments equals the line with whitespace and "/tag" removed.
    std::string stripped;
    for (const auto& item : parse_slash_tags(line)) stripped += item.segment;
    REQUIRE(stripped == join_segments(seq));
  }
}

TEST_CASE("parse_entity_output accepts the answer format") {
  CHECK(parse_entity_output(kAcceptOutput) == make({}, {"许州"}, {"天成初"}, {"同平章事"}));
  CHECK(parse_entity_output("'characters': ['赵承庆'], 'place': [], 'time': [], 'official positions': ['御史']") ==
        make({"赵承庆"}, {}, {}, {"御史"}));
}

TEST_CASE("parse_entity_output rejects free prose") {
  try {
    parse_entity_output("天成初：时间，许州：地点，同平章事：官职。");
    FAIL("expected NoStructureFound");
  } catch (const FormatError& e) {
    CHECK(e.kind() == FormatErrorKind::kNoStructureFound);
  }
  CHECK_THROWS_AS(parse_entity_output(""), FormatError);
}

TEST_CASE("parse_entity_output variants") {
  const auto expected = make({"赵承庆"}, {}, {}, {"御史"});
  // JSON object.
  CHECK(parse_entity_output(R"({"characters": ["赵承庆"], "place": [], "time": [], "official positions": ["御史"]})") ==
        expected);
  // Prose around it, spaced and cased keys, reordered.
  CHECK(parse_entity_output("结果如下：{' Official_Positions' : ['御史'], ' characters' : ['赵承庆']}。") == expected);
  // Chinese keys and full-width punctuation.
  CHECK(parse_entity_output("人物：[\"赵承庆\"]，官职：[\"御史\"]") == expected);
  // Missing keys are empty.
  CHECK(parse_entity_output("'time': ['天成初']") == make({}, {}, {"天成初"}, {}));
  // An echoed placeholder schema is overridden by the answer that follows.
  CHECK(parse_entity_output("格式 'time': [...]。答案 'time': ['天成初']") == make({}, {}, {"天成初"}, {}));
}

TEST_CASE("property: entity parsing ignores key order and whitespace") {
  testing::Gen g(5);
  for (int trial = 0; trial < 200; ++trial) {
    EntitySet set;
    for (auto c : kEntityCategories) {
      const auto n = g.below(3);
      for (std::size_t i = 0; i < n; ++i) set[c].push_back(g.ideographs(1 + g.below(3), 30));
    }
    std::vector<std::string> parts;
    for (auto c : kEntityCategories) {
      std::string part = "'" + std::string(key(c)) + "'" + (g.coin() ? " : " : ":") + "[";
      for (std::size_t i = 0; i < set[c].size(); ++i) part += (i ? ", '" : "'") + set[c][i] + "'";
      parts.push_back(part + "]");
    }
    g.engine().seed(trial);
    for (std::size_t i = parts.size(); i > 1; --i) std::swap(parts[i - 1], parts[g.below(i)]);
    std::string text;
    for (const auto& p : parts) text += (text.empty() ? "" : (g.coin() ? ",  " : ",")) + p;
    REQUIRE(parse_entity_output(text) == set);
    REQUIRE(parse_entity_output(serialize_entities(set)) == set);
  }
}

TEST_CASE("alias table file extends the built-in keys") {
  auto aliases = EntityKeyAliases::parse("人名官衔\tofficial positions\n");
  CHECK(parse_entity_output("人名官衔: ['御史']", aliases)[EntityCategory::kOfficialPositions] ==
        std::vector<std::string>{"御史"});
  CHECK_THROWS(EntityKeyAliases::parse("x\tnot a category\n"));
}

TEST_CASE("instruction records round-trip through a file") {
  const std::vector<InstructionRecord> records = {
      {"Extract entities.", "天成初，移镇许州，加同平章事。", kAcceptOutput, Task::kNer, "self-built", Stage::kSeed},
      {"Translate.", "", "译文", Task::kTranslation, "classical-modern", Stage::kGenerated},
      {"Punctuate \"this\".", "天下福也", "天下福也。", Task::kPunctuation, "daizhige", Stage::kIntegrated},
  };
  auto path = std::filesystem::temp_directory_path() / "guwen_records_test.jsonl";
  write_records(records, path);
  auto read = read_records(path);
  CHECK(read.errors.empty());
  CHECK(read.records == records);
  CHECK(read.line_count == 3);
  std::filesystem::remove(path);
}

TEST_CASE("malformed record lines are reported with line numbers") {
  std::string content;
  for (int i = 0; i < 10; ++i) {
    if (i == 6) {
      content += "{\"instruction\": \"x\"\n";
    } else {
      content += format_record({"Instruction " + std::to_string(i), "in", "out", Task::kOther, "s", Stage::kSeed}) + "\n";
    }
  }
  auto r = parse_records(content);
  CHECK(r.records.size() == 9);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].line == 7);
  CHECK(parse_records("").records.empty());
  CHECK(parse_records("").line_count == 0);
}

TEST_CASE("property: parse_records partitions arbitrary bytes") {
  testing::Gen g(9);
  const std::string good = format_record({"i", "", "o", Task::kNer, "s", Stage::kSeed});
  const std::vector<std::string> pieces = {good, "\n", "{", "}", "\"", "\xff", "\xe4\xb8", "null", "[1]", " ", "\r\n",
                                           "{\"task\":\"ner\"}"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string content;
    const auto n = g.below(12);
    for (std::size_t i = 0; i < n; ++i) content += g.pick(pieces);
    RecordReadResult r;
    REQUIRE_NOTHROW(r = parse_records(content));
    REQUIRE(r.records.size() + r.errors.size() == r.line_count);
  }
}

TEST_CASE("validate_output per task") {
  CHECK_FALSE(validate_output(Task::kPos, "四年春，衞州吁弑桓公而立。", kGold));
  CHECK(validate_output(Task::kPos, "四年春", kGold));
  CHECK(validate_output(Task::kPos, "", "四年/zz"));
  CHECK_FALSE(validate_output(Task::kPunctuation, "四年春衞州吁弑桓公而立", "四年春，衞州吁弑桓公而立。"));
  CHECK(validate_output(Task::kPunctuation, "四年春衞州吁弑桓公而立", "四年春衞州吁弑桓公而立"));
  CHECK(validate_output(Task::kPunctuation, "四年春", "四年夏。"));
  CHECK_FALSE(validate_output(Task::kNer, "", kAcceptOutput));
  CHECK(validate_output(Task::kNer, "", "天成初：时间"));
  CHECK(validate_output(Task::kTranslation, "x", "  "));
  CHECK_FALSE(validate_output(Task::kTranslation, "x", "y"));
}
