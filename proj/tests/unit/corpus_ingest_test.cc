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

#include "tripletkit/corpus_ingest.h"

#include "doctest.h"
#include "tripletkit/records.h"
#include "tripletkit/text.h"

using namespace tripletkit;

namespace {

TitleMaps Maps() {
  TitleMaps maps;
  TitleMap en("en");
  en.Add("Mumbai Mirror", "Q6934698");
  en.Add("Mumbai", "Q1156");
  en.Add("Premià de Dalt", "Q13850");
  maps.emplace("en", en);
  TitleMap nl("nl");
  nl.Add("Mumbai", "Q1156");
  maps.emplace("nl", nl);
  return maps;
}

std::string Record(const std::string& lang, const std::string& page,
                   const std::string& text) {
  Json j = {{"title", "T" + page}, {"page_id", page}, {"lang", lang},
            {"text", text}};
  return j.dump();
}

}  // namespace

TEST_CASE("links become entity mentions with scalar offsets") {
  IngestDiagnostic diag;
  size_t dropped = 0;
  auto doc = ParseRecord(
      Record("en", "1",
             "The [[Mumbai Mirror]] is a tabloid in [[mumbai|Bombay]] near "
             "[[Premià_de_Dalt#x|Premià]] and [[Nowhere|here]]."),
      1, Maps(), &diag, &dropped);
  REQUIRE(doc);
  CHECK(doc->doc_id == "en:1");
  CHECK(doc->text ==
        "The Mumbai Mirror is a tabloid in Bombay near Premià and here.");
  REQUIRE(doc->mentions.size() == 3);
  CHECK(doc->mentions[0].entity_id == "Q6934698");
  CHECK(doc->mentions[1].surface == "Bombay");
  CHECK(doc->mentions[1].entity_id == "Q1156");
  CHECK(doc->mentions[2].entity_id == "Q13850");
  CHECK(doc->mentions[2].end - doc->mentions[2].start == 6);
  CHECK(dropped == 1);
  CHECK(ValidateDocument(*doc).empty());
}

TEST_CASE("bad records are reported by reason") {
  std::vector<std::string> lines = {
      "not json",
      Record("xx", "2", "text"),
      Record("en", "3", "open [[link"),
      Record("en", "4", "stray ]] here"),
      Record("en", "5", "[[a [[b]]]]"),
      R"({"title":"t","lang":"en","text":"x"})",
      Record("en", "6", "fine"),
  };
  IngestResult r = ParseCorpus(lines, Maps());
  CHECK(r.records == 7);
  CHECK(r.documents.size() == 1);
  CHECK(r.CountReason("malformed") == 5);
  CHECK(r.CountReason("unknown_language") == 1);
  CHECK(r.diagnostics[1].line == 2);
}

TEST_CASE("parallel parsing matches sequential output") {
  Rng rng(7);
  std::vector<std::string> lines;
  const char* pieces[] = {"[[Mumbai]]", "[[Mumbai Mirror|the Mirror]]", " in ",
                          "日本", "[[Missing]]", "[[bad", " and ", "é"};
  for (int i = 0; i < 300; ++i) {
    std::string text;
    int n = 1 + static_cast<int>(rng.Below(8));
    for (int k = 0; k < n; ++k) text += pieces[rng.Below(8)];
    lines.push_back(Record(i % 5 == 0 ? "nl" : "en", std::to_string(i), text));
  }
  IngestResult one = ParseCorpus(lines, Maps(), 1);
  IngestResult four = ParseCorpus(lines, Maps(), 4);
  CHECK(one.documents == four.documents);
  CHECK(one.dropped_links == four.dropped_links);
  REQUIRE(one.diagnostics.size() == four.diagnostics.size());
  for (size_t i = 0; i < one.diagnostics.size(); ++i) {
    CHECK(one.diagnostics[i].line == four.diagnostics[i].line);
  }
  for (const Document& d : one.documents) CHECK(ValidateDocument(d).empty());
}

TEST_CASE("title map rejects conflicting ids") {
  TitleMap m("en");
  m.Add("A", "Q1");
  m.Add("A", "Q1");
  CHECK_THROWS_AS(m.Add("A", "Q2"), FormatError);
  CHECK(m.Resolve("a") == std::optional<std::string>("Q1"));
  CHECK_FALSE(m.Resolve("B"));
}

TEST_CASE("dates are linked per language") {
  Document en;
  en.lang = "en";
  en.text = "Founded on 30 May 2005 and renamed May 3, 1999.";
  en = LinkValues(en);
  REQUIRE(en.mentions.size() == 2);
  CHECK(en.mentions[0].surface == "30 May 2005");
  CHECK(en.mentions[0].literal == "2005-05-30");
  CHECK(en.mentions[1].literal == "1999-05-03");

  Document nl;
  nl.lang = "nl";
  nl.text = "Opgericht op 30 mei 2005.";
  nl = LinkValues(nl);
  REQUIRE(nl.mentions.size() == 1);
  CHECK(nl.mentions[0].literal == "2005-05-30");

  Document ja;
  ja.lang = "ja";
  ja.text = "2005年5月30日に創刊";
  ja = LinkValues(ja);
  REQUIRE(ja.mentions.size() == 1);
  CHECK(ja.mentions[0].literal == "2005-05-30");
  CHECK(ja.mentions[0].end == 10);
}

TEST_CASE("impossible dates fall back to year and numbers") {
  Document d;
  d.lang = "en";
  d.text = "On 31 February 2001 it happened.";
  d = LinkValues(d);
  bool has_full_date = false;
  for (const Mention& m : d.mentions) {
    if (m.literal.size() == 10) has_full_date = true;
  }
  CHECK_FALSE(has_full_date);
  bool has_year = false;
  for (const Mention& m : d.mentions) {
    if (m.kind == MentionKind::kDate && m.literal == "2001") has_year = true;
  }
  CHECK(has_year);
}

TEST_CASE("quantities use language separators") {
  Document de;
  de.lang = "de";
  de.text = "Die Stadt hat 12.345,50 Einwohner.";
  de = LinkValues(de);
  REQUIRE(de.mentions.size() == 1);
  CHECK(de.mentions[0].kind == MentionKind::kQuantity);
  CHECK(de.mentions[0].literal == "12345.5");

  Document en;
  en.lang = "en";
  en.text = "Population 1,250 in 2010 at 3.0 km.";
  en = LinkValues(en);
  REQUIRE(en.mentions.size() == 3);
  CHECK(en.mentions[0].literal == "1250");
  CHECK(en.mentions[1].kind == MentionKind::kDate);
  CHECK(en.mentions[2].literal == "3");
}

TEST_CASE("value linking keeps entity mentions and is idempotent") {
  IngestDiagnostic diag;
  size_t dropped = 0;
  auto doc = ParseRecord(
      Record("en", "1", "[[Mumbai|Mumbai 2005]] had 2005 and 7 papers."), 1,
      Maps(), &diag, &dropped);
  REQUIRE(doc);
  Document once = LinkValues(*doc);
  CHECK(once.mentions[0] == doc->mentions[0]);
  CHECK(once.mentions.size() == 3);
  CHECK(LinkValues(once) == once);
  CHECK(ValidateDocument(once).empty());
}

TEST_CASE("NormalizeNumber") {
  CHECK(NormalizeNumber("007", ".", ",") == "7");
  CHECK(NormalizeNumber("1 000,250", ",", " ") == "1000.25");
  CHECK(NormalizeNumber("0.0", ".", ",") == "0");
}
