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

#ifndef TRIPLETKIT_TESTS_SCORING_ORACLE_H_
#define TRIPLETKIT_TESTS_SCORING_ORACLE_H_

// Relation-extraction counts by exhaustive matching, and the random
// relation generator the scorer properties are run over.

#include <algorithm>
#include <string>
#include <vector>

#include "support/oracles.h"
#include "tripletkit/evaluate.h"
#include "tripletkit/text.h"

namespace tripletkit::testing {

inline RelationInstance RandomRelation(Rng& rng) {
  static const std::pair<size_t, size_t> kSpans[] = {{0, 3}, {4, 8}, {0, 8}, {9, 12}};
  static const EntityType kTypes[] = {EntityType::kPerson, EntityType::kLocation,
                                      EntityType::kDate};
  static const char* kRels[] = {"country", "member of", "part of"};
  auto ent = [&] {
    auto [s, e] = kSpans[rng.Below(4)];
    return EntityRef{"s" + std::to_string(s) + "_" + std::to_string(e), s, e,
                     kTypes[rng.Below(3)], ""};
  };
  return RelationInstance{ent(), ent(), kRels[rng.Below(3)], ""};
}

inline bool SameSpan(const EntityRef& a, const EntityRef& b) {
  return a.start == b.start && a.end == b.end;
}

inline bool BoundaryEqual(const RelationInstance& p, const RelationInstance& g) {
  return SameSpan(p.subject, g.subject) && SameSpan(p.object, g.object) &&
         p.relation == g.relation;
}

inline bool StrictEqual(const RelationInstance& p, const RelationInstance& g) {
  return BoundaryEqual(p, g) && p.subject.type == g.subject.type &&
         p.object.type == g.object.type;
}

inline std::vector<RelationInstance> Unique(const std::vector<RelationInstance>& v) {
  std::vector<RelationInstance> out;
  for (const auto& r : v) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const auto& o) { return StrictEqual(o, r); });
    if (!dup) out.push_back(r);
  }
  return out;
}

// Oracle counts for one document and one relation filter ("" = all).
inline Counts OracleCounts(const std::vector<RelationInstance>& preds,
                    const std::vector<RelationInstance>& golds, MatchMode mode,
                    const std::string& relation = "") {
  std::vector<RelationInstance> p, g;
  for (const auto& r : Unique(preds)) {
    if (relation.empty() || r.relation == relation) p.push_back(r);
  }
  for (const auto& r : Unique(golds)) {
    if (relation.empty() || r.relation == relation) g.push_back(r);
  }
  size_t tp = MaxMatching(p.size(), g.size(), [&](size_t i, size_t j) {
    return mode == MatchMode::kStrict ? StrictEqual(p[i], g[j])
                                      : BoundaryEqual(p[i], g[j]);
  });
  return {tp, p.size() - tp, g.size() - tp};
}

}  // namespace tripletkit::testing

#endif  // TRIPLETKIT_TESTS_SCORING_ORACLE_H_
