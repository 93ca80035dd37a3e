// Copyright 2026 The tripletkit Authors.
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

#include "tripletkit/records.h"

#include "doctest.h"
#include "support/test_support.h"

using namespace tripletkit;
using tripletkit::testing::TempDir;

namespace {

Document SampleDocument() {
  Document d;
  d.doc_id = "ca:77";
  d.page_id = "77";
  d.lang = "ca";
  d.title = "Can Verboom";
  d.text = "Can Verboom és a Premià de Dalt.";
  d.mentions.push_back({0, 11, "Can Verboom", MentionKind::kEntity, "Q1", ""});
  d.mentions.push_back({17, 31, "Premià de Dalt", MentionKind::kEntity, "Q2", ""});
  return d;
}

}  // namespace

TEST_CASE("document round-trips through JSON") {
  Document d = SampleDocument();
  CHECK(ValidateDocument(d).empty());
  CHECK(DocumentFromJson(ToJson(d)) == d);
}

TEST_CASE("value mentions carry literals") {
  Mention m{3, 14, "30 mei 2005", MentionKind::kDate, "", "2005-05-30"};
  Json j = ToJson(m);
  CHECK(j["literal"] == "2005-05-30");
  CHECK_FALSE(j.contains("entity_id"));
  CHECK(MentionFromJson(j) == m);
}

TEST_CASE("triplet round-trip keeps optional scores") {
  Triplet t;
  t.triplet_id = "ca:77/0/P131/1";
  t.doc_id = "ca:77";
  t.lang = "ca";
  t.page_id = "77";
  t.subj = 0;
  t.obj = 1;
  t.pid = "P131";
  t.entail_score = 0.25;
  t.status = TripletStatus::kSilver;
  CHECK(TripletFromJson(ToJson(t)) == t);
  t.entail_score.reset();
  CHECK_FALSE(ToJson(t).contains("entail_score"));
  CHECK(TripletFromJson(ToJson(t)) == t);
}

TEST_CASE("dataset record round-trip") {
  DatasetRecord r;
  r.doc_id = "nl:1";
  r.lang = "nl";
  r.text = "x";
  r.relations.push_back({{"Mumbai Mirror", 0, 13, EntityType::kMedia, "Q5"},
                         {"30 mei 2005", 20, 31, EntityType::kDate, ""},
                         "inception",
                         "P571"});
  CHECK(DatasetRecordFromJson(ToJson(r)) == r);
}

TEST_CASE("schema violations raise FormatError") {
  CHECK_THROWS_AS(DocumentFromJson(Json::parse(R"({"doc_id":"a"})")), FormatError);
  CHECK_THROWS_AS(DocumentFromJson(Json::array()), FormatError);
  CHECK_THROWS_AS(
      MentionFromJson(Json::parse(
          R"({"start":0,"end":1,"surface":"a","kind":"entity"})")),
      FormatError);
  CHECK_THROWS_AS(
      MentionFromJson(Json::parse(
          R"({"start":-1,"end":1,"surface":"a","kind":"entity","entity_id":"Q"})")),
      FormatError);
  CHECK_THROWS_AS(
      JudgmentFromJson(Json::parse(
          R"({"triplet_id":"t","annotator_id":"a","verdict":"yes"})")),
      FormatError);
  CHECK_THROWS_AS(
      EntityRefFromJson(Json::parse(R"({"surface":"a","type":"planet"})")),
      FormatError);
}

TEST_CASE("ValidateDocument reports the first violation") {
  Document d = SampleDocument();
  d.mentions[1].surface = "Premia de Dalt";
  CHECK(ValidateDocument(d).find("surface differs") != std::string::npos);
  d = SampleDocument();
  std::swap(d.mentions[0], d.mentions[1]);
  CHECK(ValidateDocument(d).find("overlapping") != std::string::npos);
}

TEST_CASE("JSONL and TSV files") {
  TempDir dir;
  std::vector<Document> docs = {SampleDocument(), SampleDocument()};
  docs[1].doc_id = "ca:78";
  WriteFile(dir.File("sub/docs.jsonl"), ToJsonl(docs));
  CHECK(ReadJsonl<Document>(dir.File("sub/docs.jsonl"), &DocumentFromJson) == docs);

  WriteFile(dir.File("bad.jsonl"), "{\"doc_id\":1}\n");
  CHECK_THROWS_AS(ReadJsonl<Document>(dir.File("bad.jsonl"), &DocumentFromJson),
                  FormatError);

  WriteFile(dir.File("t.tsv"), "# header\nP17\tcountry\n\nP31\tinstance of\r\n");
  auto rows = ReadTsv(dir.File("t.tsv"), 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "instance of");
  CHECK_THROWS_AS(ReadTsv(dir.File("t.tsv"), 3), FormatError);
  CHECK(ParseTsv("a\tb\n#c\n", 2).size() == 1);
}
