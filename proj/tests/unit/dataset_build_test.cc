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

#include "tripletkit/dataset_build.h"

#include <cmath>

#include "doctest.h"
#include "support/generators.h"
#include "support/test_support.h"
#include "tripletkit/records.h"

using namespace tripletkit;
using namespace tripletkit::testing;

namespace {

Document Doc(const std::string& lang, const std::string& page) {
  Document d;
  d.doc_id = lang + ":" + page;
  d.page_id = page;
  d.lang = lang;
  d.text = "Paris France 1999 12";
  d.mentions = {{0, 5, "Paris", MentionKind::kEntity, "Q90", ""},
                {6, 12, "France", MentionKind::kEntity, "Q142", ""},
                {13, 17, "1999", MentionKind::kDate, "", "1999"},
                {18, 20, "12", MentionKind::kQuantity, "", "12"}};
  return d;
}

Triplet T(const Document& d, int s, const std::string& pid, int o,
          TripletStatus status) {
  Triplet t;
  t.doc_id = d.doc_id;
  t.lang = d.lang;
  t.page_id = d.page_id;
  t.subj = s;
  t.obj = o;
  t.pid = pid;
  t.triplet_id = MakeTripletId(d.doc_id, s, pid, o);
  t.status = status;
  return t;
}

}  // namespace

TEST_CASE("shared pages land in one split and splits are page-disjoint") {
  SharedPages f = MakeSharedPages();
  CHECK(f.pages.size() == 200);
  SplitAssignment a = AssignSplits(f.pages, {}, 42, f.table);
  CHECK(a.pages().size() == 200);
  for (const auto& [key, pages] : f.by_key) {
    std::set<DataSplit> seen;
    for (const PageRef& p : pages) seen.insert(*a.Find(p.lang, p.page_id));
    CHECK(seen.size() == 1);
  }
  std::map<std::string, std::set<DataSplit>> key_splits;
  for (const auto& [page, split] : a.pages()) {
    key_splits[f.table.PageKey(page.lang, page.page_id)].insert(split);
  }
  for (const auto& [key, s] : key_splits) CHECK(s.size() == 1);

  SplitAssignment b = AssignSplits(f.pages, {}, 42, f.table);
  CHECK(a.ToTsv() == b.ToTsv());
  CHECK(SplitAssignment::FromTsv(a.ToTsv()).ToTsv() == a.ToTsv());
  CHECK_THROWS_AS(SplitAssignment::FromTsv("en\t1\tQ1\tdev\n"), FormatError);
  CHECK_THROWS_AS(SplitAssignment::FromTsv("en\t1\tQ1\ttrain\nes\t1\tQ1\ttest\n"),
                  FormatError);
  CHECK(AssignSplits(f.pages, {}, 43, f.table).ToTsv() != a.ToTsv());
}

TEST_CASE("split sizes follow the ratios within three sigma") {
  std::vector<PageRef> pages;
  for (int i = 0; i < 5000; ++i) pages.push_back({"en", std::to_string(i)});
  SplitRatios ratios{0.7, 0.2, 0.1};
  SplitAssignment a = AssignSplits(pages, ratios, 7);
  std::map<DataSplit, double> n;
  for (const auto& [p, s] : a.pages()) ++n[s];
  for (auto [split, p] : {std::pair{DataSplit::kTrain, 0.7},
                          std::pair{DataSplit::kValidation, 0.2},
                          std::pair{DataSplit::kTest, 0.1}}) {
    double sigma = std::sqrt(5000 * p * (1 - p));
    CHECK(std::abs(n[split] - 5000 * p) <= 3 * sigma);
  }
  CHECK_THROWS_AS(AssignSplits(pages, {0.5, 0.2, 0.2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(AssignSplits(pages, {1.2, -0.1, -0.1}, 1), std::invalid_argument);
}

TEST_CASE("a key cannot be assigned two splits") {
  SplitAssignment a;
  a.Set({"en", "1"}, "Q1", DataSplit::kTrain);
  CHECK_THROWS_AS(a.Set({"es", "7"}, "Q1", DataSplit::kTest), std::logic_error);
  InterlanguageTable t;
  t.Add("Q1", "en", "1");
  CHECK_THROWS_AS(t.Add("Q2", "en", "1"), FormatError);
  CHECK(t.PageKey("en", "1") == "Q1");
  CHECK(t.PageKey("en", "2") == "2");
}

TEST_CASE("split names") {
  for (DataSplit s : kSplits) CHECK(ParseSplit(SplitName(s)) == s);
  CHECK_FALSE(ParseSplit("dev"));
}

TEST_CASE("entity references are typed by mention kind") {
  Document d = Doc("en", "1");
  EntityTypeMap types;
  types.Set("Q90", EntityType::kLocation);
  CHECK(MakeEntityRef(d, 0, types).type == EntityType::kLocation);
  CHECK(MakeEntityRef(d, 0, types).entity_id == "Q90");
  CHECK(MakeEntityRef(d, 1, types).type == EntityType::kUnknown);
  CHECK(MakeEntityRef(d, 2, types).type == EntityType::kDate);
  CHECK(MakeEntityRef(d, 3, types).type == EntityType::kNumber);
}

TEST_CASE("gold build keeps gold_true triplets of the vocabulary") {
  std::vector<Document> docs = {Doc("en", "1"), Doc("es", "1"), Doc("en", "2")};
  RelationVocab top({{"P17", "country", 1}, {"P571", "inception", 2}});
  std::vector<Triplet> ts = {
      T(docs[0], 0, "P17", 1, TripletStatus::kGoldTrue),
      T(docs[0], 0, "P571", 2, TripletStatus::kGoldFalse),
      T(docs[1], 0, "P17", 1, TripletStatus::kGoldTrue),
      T(docs[1], 0, "P31", 1, TripletStatus::kGoldTrue),
      T(docs[2], 0, "P571", 2, TripletStatus::kGoldTrue),
      T(docs[2], 0, "P17", 1, TripletStatus::kSilver)};
  InterlanguageTable table;
  table.Add("Q90", "en", "1");
  table.Add("Q90", "es", "1");
  std::vector<PageRef> pages = {{"en", "1"}, {"es", "1"}, {"en", "2"}};
  SplitAssignment splits = AssignSplits(pages, {}, 3, table);
  EntityTypeMap types;
  types.Set("Q90", EntityType::kLocation);

  BuildResult r = BuildGold(ts, IndexDocuments(docs), top, types, splits);
  size_t relations = 0;
  for (const auto& [split, by_lang] : r.files) {
    for (const auto& [lang, recs] : by_lang) {
      for (const DatasetRecord& rec : recs) {
        CHECK(splits.Find(rec.lang, rec.page_id) == split);
        relations += rec.relations.size();
      }
    }
  }
  CHECK(relations == 3);
  DataSplit s = *splits.Find("en", "1");
  const auto& en = r.files.at(s).at("en");
  REQUIRE_FALSE(en.empty());
  CHECK(en[0].relations[0].relation == "country");
  CHECK(en[0].relations[0].subject.type == EntityType::kLocation);
  CHECK(r.counts.Total("country", s) == 2);

  SplitAssignment partial;
  partial.Set({"en", "1"}, "Q90", DataSplit::kTrain);
  CHECK_THROWS_AS(BuildGold(ts, IndexDocuments(docs), top, types, partial),
                  std::logic_error);
}

TEST_CASE("counts table") {
  SplitFiles files;
  auto rec = [](const std::string& lang, std::vector<std::string> rels) {
    DatasetRecord r;
    r.lang = lang;
    for (auto& name : rels) r.relations.push_back({{}, {}, name, ""});
    return r;
  };
  files[DataSplit::kTrain]["en"] = {rec("en", {"country", "country", "capital"})};
  files[DataSplit::kTrain]["es"] = {rec("es", {"capital", "capital"})};
  files[DataSplit::kTest]["es"] = {rec("es", {"inception"})};
  CountsTable t = CountRelations(files);
  CHECK(t.langs == std::vector<std::string>{"en", "es"});
  CHECK(t.RowOrder() == std::vector<std::string>{"capital", "country", "inception"});
  std::string tsv = t.ToTsv();
  auto lines = Split(tsv, '\n');
  CHECK(lines[0] ==
        "relation\ttrain.en\ttrain.es\tvalidation.en\tvalidation.es\ttest.en\t"
        "test.es\ttrain.total\tvalidation.total\ttest.total");
  CHECK(lines[1] == "capital\t1\t2\t0\t0\t0\t0\t3\t0\t0");
  CHECK(lines[3] == "inception\t0\t0\t0\t0\t0\t1\t0\t0\t1");
}

TEST_CASE("distribution with a location rollup") {
  DatasetRecord en;
  en.lang = "en";
  for (const char* name : {"country", "capital", "located in the administrative territorial entity",
                           "inception"}) {
    en.relations.push_back({{}, {}, name, ""});
  }
  DatasetRecord es;
  es.lang = "es";
  es.relations.push_back({{}, {}, "inception", ""});
  std::vector<DatasetRecord> recs = {en, es};
  DistributionReport r = Distribution(recs, DefaultLocationRelations());
  CHECK(r.location_percent.at("en") == doctest::Approx(75.0));
  CHECK(r.location_percent.at("es") == doctest::Approx(0.0));
  CHECK(r.location_percent.at("all") == doctest::Approx(60.0));
  CHECK(r.shares.at("all").at("inception").count == 2);
  CHECK(r.shares.at("en").at("country").percent == doctest::Approx(25.0));
  CHECK(ToJson(r)["location_percent"]["en"] == 75.0);
}
