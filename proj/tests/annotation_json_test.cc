// Copyright 2026 The mrtk Authors.
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

#include "mrtk/annotation_json.h"

#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "mrtk/errors.h"
#include "test_util.h"

namespace mrtk {
namespace {

using testing::DataDir;
using testing::DemoGraph;
using testing::ReadFile;

TEST(ReadJson, DemoFileEqualsApiBuiltGraph) {
  Batch b = ReadJson(ReadFile(DataDir() / "demo.json"), "demo");
  ASSERT_EQ(b.graphs.size(), 1u);
  EXPECT_EQ(b.graphs[0], DemoGraph());
  EXPECT_EQ(b.source_name, "demo");
}

TEST(WriteJson, KeyOrderAndLayout) {
  Batch b;
  b.graphs.push_back(DemoGraph());
  std::string text = WriteJson(b);
  std::vector<std::string> keys = {
      "\"tid\"",        "\"annotator\"", "\"last_saved\"",
      "\"tokens\"",     "\"concepts\"",  "\"relations\"",
      "\"covered_token_ids\"", "\"_concept_id\"", "\"_relation_id\""};
  size_t pos = 0;
  for (const auto &k : keys) {
    size_t next = text.find(k, pos);
    ASSERT_NE(next, std::string::npos) << k;
    pos = next;
  }
  EXPECT_NE(text.find("\"token_ids\": [1, 7]"), std::string::npos);
  EXPECT_NE(text.find("\"covered_token_ids\": [1, 2, 4, 6, 7]"),
            std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(ReadJson(text).graphs[0], DemoGraph());
}

TEST(WriteJson, RejectsInvalidGraph) {
  Batch b;
  b.graphs.push_back(DemoGraph());
  b.graphs[0].relations.find("r3")->referent = false;
  EXPECT_THROW(WriteJson(b), InvariantError);
}

TEST(ReadJson, UnknownKeysSurvive) {
  std::string text = R"({"graphs": [{"tid": "a", "annotator": "x",
      "last_saved": "", "tokens": ["hi"], "color": "red",
      "concepts": {"c0": {"name": "hi", "token_ids": [0], "attribute": false,
                          "first_token_id": 0, "note": {"k": [1, 2]}}},
      "relations": {}, "covered_token_ids": [0], "_concept_id": 1,
      "_relation_id": 0}], "version": 3})";
  Batch b = ReadJson(text);
  EXPECT_EQ(b.extras, (Extras{{"version", "3"}}));
  EXPECT_EQ(b.graphs[0].extras, (Extras{{"color", "\"red\""}}));
  EXPECT_EQ(b.graphs[0].concepts[0].extras,
            (Extras{{"note", "{\"k\":[1,2]}"}}));
  EXPECT_EQ(ReadJson(WriteJson(b)), b);
}

void ExpectSchemaError(const std::string &text, const std::string &fragment) {
  try {
    ReadJson(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const SchemaError &e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << e.what();
  }
}

std::string GraphText(const std::string &tid, const std::string &body) {
  return R"({"tid": ")" + tid + R"(", "annotator": "", "last_saved": "",
      "tokens": [], "concepts": {}, "relations": {}, "covered_token_ids": [],
      "_concept_id": 0, "_relation_id": 0)" + body + "}";
}

TEST(ReadJson, SchemaErrorsNameThePath) {
  ExpectSchemaError("[1]", "$: expected an object");
  ExpectSchemaError("{", "malformed JSON");
  ExpectSchemaError(R"({"graphs": [{"tid": "a"}]})",
                    "graphs[0]: missing key \"annotator\"");
  ExpectSchemaError(
      R"({"graphs": [)" + GraphText("a", "") + "," + GraphText("a", "") + "]}",
      "graphs[1].tid: duplicate tid");
  ExpectSchemaError(R"({"graphs": [{"tid": "a", "annotator": "", "last_saved": "",
      "tokens": [], "relations": {}, "covered_token_ids": [],
      "_concept_id": 1, "_relation_id": 0,
      "concepts": {"c0": {"name": "x", "token_ids": ["0"], "attribute": false,
                          "first_token_id": -1}}}]})",
                    "graphs[0].concepts.c0.token_ids[0]: expected an integer");
  ExpectSchemaError(R"({"graphs": [{"tid": "a", "annotator": "", "last_saved": "",
      "tokens": [], "relations": {}, "covered_token_ids": [],
      "_concept_id": 0, "_relation_id": 0,
      "concepts": {"c0": {"name": "x", "token_ids": [], "attribute": false,
                          "first_token_id": -1}}}]})",
                    "graphs[0].concepts.c0: id number 0 is not below");
}

TEST(ReadJson, InvariantViolationsAreRejected) {
  std::string text = ReadFile(DataDir() / "demo.json");
  text = std::regex_replace(text, std::regex("\"covered_token_ids\":\\[1, 2"),
                            "\"covered_token_ids\":[2");
  EXPECT_THROW(ReadJson(text), InvariantError);
}

TEST(ReadPlainText, OneGraphPerNonblankLine) {
  Batch b = ReadPlainText("dir/story.txt", "The boy left .\r\n\n  \nHe came back\n",
                          "ann");
  EXPECT_EQ(b.source_name, "story");
  ASSERT_EQ(b.graphs.size(), 2u);
  EXPECT_EQ(b.graphs[0].tid, "story.1");
  EXPECT_EQ(b.graphs[1].tid, "story.2");
  EXPECT_EQ(b.graphs[0].tokens,
            (std::vector<std::string>{"The", "boy", "left", "."}));
  EXPECT_EQ(b.graphs[1].annotator, "ann");
  EXPECT_TRUE(b.graphs[0].concepts.empty());
  EXPECT_TRUE(ReadPlainText("e.txt", "", "a").graphs.empty());
}

TEST(ClaimFileName, Examples) {
  EXPECT_EQ(ClaimFileName("data/story.txt", "ID"), "data/story.ID.json");
  EXPECT_EQ(ClaimFileName("story.penman", "ann"), "story.ann.json");
  EXPECT_EQ(ClaimFileName("d/story.ID.json", "ID"), "d/story.ID.json");
}

TEST(FormatTimestamp, Shape) {
  EXPECT_TRUE(std::regex_match(FormatTimestamp(std::chrono::system_clock::now()),
                               std::regex(R"(\d\d/\d\d/\d{4} \d\d:\d\d:\d\d)")));
}

TEST(JsonProperty, IdentityRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 600; ++i) {
    Batch b;
    b.graphs.push_back(testing::RandomGraph(rng, "gen." + std::to_string(i)));
    b.graphs[0].last_saved = "01/02/2026 03:04:05";
    if (i % 3 == 0) b.graphs[0].metadata.emplace_back("note", "n" + std::to_string(i));
    Batch back = ReadJson(WriteJson(b));
    ASSERT_EQ(back, b) << WriteJson(b);
  }
}

}  // namespace
}  // namespace mrtk
