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

#include "tripletkit/entity_typing.h"

#include "doctest.h"
#include "support/generators.h"
#include "support/oracles.h"
#include "support/test_support.h"
#include "tripletkit/records.h"

using namespace tripletkit;
using tripletkit::testing::MakeGraph;
using tripletkit::testing::RandomGraph;
using tripletkit::testing::TempDir;

TEST_CASE("training subset equals the depth-1 BFS oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    RandomGraph g = MakeGraph(rng);
    auto subset = SelectTrainingSubset(g.graph.synsets());
    std::set<std::string> got;
    size_t last = 0;
    for (const Synset& s : subset) {
      got.insert(s.synset_id);
      size_t pos = std::stoul(s.synset_id.substr(3));
      CHECK((got.size() == 1 || pos > last));
      last = pos;
    }
    CHECK(got.size() == subset.size());
    CHECK(got == tripletkit::testing::WithinOneHop(g.adjacency, g.core));
  }
}

TEST_CASE("edges listed on one side count and ghosts are not core") {
  std::vector<Synset> s = {{"a", "A", "x", {"ghost"}, false},
                           {"b", "B", "x", {"a"}, true}};
  auto subset = SelectTrainingSubset(s);
  REQUIRE(subset.size() == 2);
  std::vector<Synset> lone = {{"a", "A", "x", {"ghost"}, false}};
  CHECK(SelectTrainingSubset(lone).empty());
}

TEST_CASE("classifier inputs round-trip") {
  std::string in = BuildInput("Peugeot 408", "car model");
  CHECK(in == "[CLS] Peugeot 408 [SEP] car model [SEP]");
  auto parsed = ParseInput(in);
  REQUIRE(parsed);
  CHECK(parsed->first == "Peugeot 408");
  CHECK(parsed->second == "car model");
  CHECK_FALSE(ParseInput("Peugeot 408"));
  CHECK_THROWS_AS(BuildInput("", "x"), std::invalid_argument);
  CHECK_THROWS_AS(BuildInput("x", ""), std::invalid_argument);
}

TEST_CASE("train/val split is a seeded partition") {
  std::vector<int> items(101);
  for (int i = 0; i < 101; ++i) items[i] = i;
  auto [train, val] = SplitTrainVal(items, 0.9, 7);
  CHECK(train.size() == 91);
  CHECK(val.size() == 10);
  std::vector<int> all = train;
  all.insert(all.end(), val.begin(), val.end());
  std::sort(all.begin(), all.end());
  CHECK(all == items);
  auto again = SplitTrainVal(items, 0.9, 7);
  CHECK(again.first == train);
  CHECK(SplitTrainVal(items, 0.9, 8).first != train);
  CHECK_THROWS_AS(SplitTrainVal(items, 1.0, 1), std::invalid_argument);
}

TEST_CASE("confirm-or-replace on 1000 entries with 824 agreements") {
  EntityTypeMap prior, predicted;
  for (int i = 0; i < 1000; ++i) {
    std::string id = "Q" + std::to_string(i);
    EntityType t = EntityTypeFromIndex(i % kNumEntityTypes);
    prior.Set(id, t);
    predicted.Set(id, i < 824 ? t : EntityTypeFromIndex((i + 1) % kNumEntityTypes));
  }
  predicted.Set("Q-new", EntityType::kEvent);
  MergeResult r = ConfirmOrReplace(prior, predicted);
  CHECK(r.confirmations == 824);
  CHECK(r.changes == 176);
  CHECK(r.added == 1);
  CHECK(r.final_map.entries() == predicted.entries());

  EntityTypeMap partial;
  partial.Set("Q0", EntityType::kPerson);
  CHECK_THROWS_AS(ConfirmOrReplace(prior, partial), std::invalid_argument);
}

TEST_CASE("type map I/O and mock classification") {
  TempDir dir;
  WriteFile(dir.File("types.tsv"), "Q1\tperson\nQ2\tlocation\n");
  EntityTypeMap m = EntityTypeMap::Load(dir.File("types.tsv"));
  CHECK(m.TypeOf("Q1") == EntityType::kPerson);
  CHECK(m.TypeOf("Q9") == EntityType::kUnknown);
  CHECK_FALSE(m.Get("Q9"));
  WriteFile(dir.File("round.tsv"), m.ToTsv());
  CHECK(EntityTypeMap::Load(dir.File("round.tsv")).entries() == m.entries());
  WriteFile(dir.File("bad.tsv"), "Q1\tplanet\n");
  CHECK_THROWS_AS(EntityTypeMap::Load(dir.File("bad.tsv")), FormatError);

  SynsetGraph g;
  g.AddNode("bn:1", "Peugeot 408", "car model");
  g.AddNode("bn:2", "Paris", "capital of France");
  MockTypeClassifier clf(EntityType::kMiscellaneous);
  clf.Set("Paris", EntityType::kLocation);
  EntityTypeMap pred = PredictTypes(g.synsets(), {{"bn:1", "Q1"}, {"bn:2", "Q90"}}, clf);
  CHECK(pred.TypeOf("Q1") == EntityType::kMiscellaneous);
  CHECK(pred.TypeOf("Q90") == EntityType::kLocation);
}
