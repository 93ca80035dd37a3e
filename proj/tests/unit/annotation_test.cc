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

#include "tripletkit/annotation.h"

#include <cmath>

#include "doctest.h"
#include "support/generators.h"
#include "support/oracles.h"
#include "tripletkit/text.h"

using namespace tripletkit;
using tripletkit::testing::AlphaFromPairs;
using tripletkit::testing::RandomMatrix;

namespace {

Triplet T(const std::string& lang, const std::string& page,
          const std::string& pid, int n = 0) {
  Triplet t;
  t.doc_id = lang + ":" + page;
  t.lang = lang;
  t.page_id = page;
  t.subj = 0;
  t.obj = 1 + n;
  t.pid = pid;
  t.triplet_id = MakeTripletId(t.doc_id, 0, pid, t.obj);
  t.status = TripletStatus::kSilver;
  return t;
}

Judgment J(const std::string& triplet, const std::string& annotator, bool v,
           int64_t at = 0) {
  return {triplet, annotator, v, at};
}

}  // namespace

TEST_CASE("alpha on a hand-computed matrix") {
  ReliabilityMatrix m = {{true, false}, {false, true}};
  CHECK(KrippendorffAlpha(m).alpha == doctest::Approx(-0.5));
  // Four items, two coders, one disagreement:
  // n=8, observed 2/1, pairs across 2*(5*3)=30 -> 1 - 7*2/30.
  ReliabilityMatrix m2 = {{true, true}, {true, true}, {false, false}, {true, false}};
  CHECK(KrippendorffAlpha(m2).alpha == doctest::Approx(1.0 - 14.0 / 30.0));
}

TEST_CASE("alpha matches the pairwise oracle on random matrices") {
  Rng rng(99);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    ReliabilityMatrix m = RandomMatrix(rng);
    auto expected = AlphaFromPairs(m);
    if (!expected) {
      CHECK_THROWS_AS(KrippendorffAlpha(m), std::invalid_argument);
      continue;
    }
    AlphaResult r = KrippendorffAlpha(m);
    CHECK(std::abs(r.alpha - *expected) <= 1e-9);
    ++compared;
  }
  CHECK(compared > 450);
}

TEST_CASE("perfect agreement gives exactly one") {
  ReliabilityMatrix m = {{true, true, std::nullopt}, {false, false, false}};
  AlphaResult r = KrippendorffAlpha(m);
  CHECK(r.alpha == 1.0);
  CHECK_FALSE(r.degenerate);
  ReliabilityMatrix same = {{true, true}, {true, true, true}};
  AlphaResult d = KrippendorffAlpha(same);
  CHECK(d.alpha == 1.0);
  CHECK(d.degenerate);
  CHECK(d.pairable_values == 5);
  ReliabilityMatrix none = {{true, std::nullopt}, {std::nullopt, false}};
  CHECK_THROWS_AS(KrippendorffAlpha(none), std::invalid_argument);
}

TEST_CASE("reliability matrix from judgments") {
  std::vector<Judgment> js = {J("t2", "b", true), J("t1", "a", false),
                              J("t1", "b", true)};
  ReliabilityMatrix m = BuildReliabilityMatrix(js);
  REQUIRE(m.size() == 2);
  CHECK(m[0][0] == std::optional<bool>(false));
  CHECK(m[0][1] == std::optional<bool>(true));
  CHECK_FALSE(m[1][0]);
}

TEST_CASE("majority aggregation with quorum") {
  CHECK(AggregateVerdicts({}) == Verdict::kPending);
  bool tt_f[] = {true, true, false};
  bool t_ff[] = {true, false, false};
  bool tt[] = {true, true};
  CHECK(AggregateVerdicts(tt_f) == Verdict::kGoldTrue);
  CHECK(AggregateVerdicts(t_ff) == Verdict::kGoldFalse);
  CHECK(AggregateVerdicts(tt) == Verdict::kPending);

  std::vector<Judgment> js = {
      J("x", "a", true), J("x", "a", false),  // duplicate, first kept
      J("x", "b", false), J("x", "c", false), J("x", "d", true),
      J("y", "a", true), J("y", "b", true)};
  CHECK(DedupeJudgments(js).size() == 6);
  auto agg = Aggregate(js);
  CHECK(agg.at("x") == Verdict::kGoldFalse);
  CHECK(agg.at("y") == Verdict::kPending);
  AggregateOptions two{2, 2};
  CHECK(Aggregate(js, two).at("y") == Verdict::kGoldTrue);
}

TEST_CASE("9:1 true:false reports 10 percent filtered") {
  std::vector<Judgment> js;
  std::map<std::string, std::string> lang_of;
  for (int i = 0; i < 20; ++i) {
    std::string id = "t" + std::to_string(i);
    lang_of[id] = "en";
    for (const char* a : {"a", "b", "c"}) js.push_back(J(id, a, i >= 2));
  }
  lang_of["extra"] = "es";
  auto stats = FilteredStats(Aggregate(js), lang_of);
  CHECK(stats.size() == 1);
  CHECK(stats.at("en") == doctest::Approx(10.0));
}

TEST_CASE("inverse-frequency weights") {
  std::vector<Triplet> s = {T("en", "1", "P1"), T("en", "2", "P1"),
                            T("en", "3", "P2")};
  auto w = InverseFrequencyWeights(s);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(0.5));
}

TEST_CASE("sampling keeps common pages and draws the rest by weight") {
  std::vector<Triplet> silver;
  std::vector<std::string> langs = {"en", "es"};
  silver.push_back(T("en", "shared", "P1"));
  silver.push_back(T("es", "shared", "P1"));
  for (int i = 0; i < 40; ++i) {
    silver.push_back(T(i % 2 ? "en" : "es", "p" + std::to_string(i),
                       i < 36 ? "P1" : "P2", i));
  }
  silver.push_back(T("de", "shared", "P1"));
  SamplingConfig cfg;
  cfg.seed = 5;
  cfg.random_sample_size = 10;
  auto sample = SampleForAnnotation(silver, langs, cfg);
  CHECK(sample.size() == 12);
  CHECK(sample[0].page_id == "shared");
  CHECK(sample[1].page_id == "shared");
  for (const Triplet& t : sample) CHECK(t.lang != "de");
  CHECK(SampleForAnnotation(silver, langs, cfg) == sample);

  // Rare relations are over-represented relative to their share.
  int p2 = 0, draws = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    cfg.seed = seed;
    for (const Triplet& t : SampleForAnnotation(silver, langs, cfg)) {
      if (t.page_id == "shared") continue;
      ++draws;
      if (t.pid == "P2") ++p2;
    }
  }
  CHECK(static_cast<double>(p2) / draws > 0.2);

  cfg.relations = {"P2"};
  for (const Triplet& t : SampleForAnnotation(silver, langs, cfg)) {
    CHECK(t.pid == "P2");
  }
}

TEST_CASE("HITs are per language and flag the remainder") {
  Document en;
  en.doc_id = "en:1";
  en.lang = "en";
  en.text = "A B C D E F G H I J K L M";
  for (size_t i = 0; i < 13; ++i) {
    en.mentions.push_back({2 * i, 2 * i + 1, std::string(1, char('A' + i)),
                           MentionKind::kEntity, "Q" + std::to_string(i), ""});
  }
  std::vector<Document> docs = {en};
  std::vector<Triplet> ts;
  for (int i = 0; i < 12; ++i) {
    Triplet t = T("en", "1", "P1", i);
    ts.push_back(t);
  }
  ts.push_back(T("es", "9", "P1"));
  RelationVocab vocab({{"P1", "follows", 1}});
  auto hits = AssignHits(ts, IndexDocuments(docs), vocab);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].items.size() == 10);
  CHECK_FALSE(hits[0].partial);
  CHECK(hits[1].items.size() == 2);
  CHECK(hits[1].partial);
  CHECK(hits[0].items[0].relation == "follows");
  CHECK(hits[0].items[0].obj_start == 2);
  CHECK(HitFromJson(ToJson(hits[1])) == hits[1]);
  CHECK_THROWS_AS(AssignHits(ts, IndexDocuments(docs), vocab, 0),
                  std::invalid_argument);
}
