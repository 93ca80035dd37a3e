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

#ifndef TRIPLETKIT_DATASET_BUILD_H_
#define TRIPLETKIT_DATASET_BUILD_H_

// Final dataset assembly: page-disjoint splits, gold and silver dataset
// records, the per-relation counts table and distribution reports.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tripletkit/entity_typing.h"
#include "tripletkit/triplet_extract.h"
#include "tripletkit/types.h"

namespace tripletkit {

enum class DataSplit : uint8_t { kTrain, kValidation, kTest };
inline constexpr std::array<DataSplit, 3> kSplits = {DataSplit::kTrain,
                                                  DataSplit::kValidation,
                                                  DataSplit::kTest};
std::string_view SplitName(DataSplit s);
std::optional<DataSplit> ParseSplit(std::string_view name);

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

// Cross-lingual page identity. TSV rows: key \t lang \t page_id. Pages
// absent from the table are their own key (their page_id).
class InterlanguageTable {
 public:
  static InterlanguageTable Load(const std::string& path);

  // Throws FormatError when (lang, page_id) is already mapped elsewhere.
  void Add(const std::string& key, const std::string& lang,
           const std::string& page_id);
  std::string PageKey(const std::string& lang, const std::string& page_id) const;

 private:
  std::map<std::pair<std::string, std::string>, std::string> keys_;
};

struct PageRef {
  std::string lang;
  std::string page_id;

  auto operator<=>(const PageRef&) const = default;
};

class SplitAssignment {
 public:
  void Set(const PageRef& page, const std::string& key, DataSplit split);
  std::optional<DataSplit> Find(const std::string& lang,
                            const std::string& page_id) const;

  const std::map<PageRef, DataSplit>& pages() const { return pages_; }
  const std::map<std::string, DataSplit>& keys() const { return keys_; }

  // lang \t page_id \t key \t split, sorted.
  std::string ToTsv() const;
  // Inverse of ToTsv. Throws FormatError on bad rows.
  static SplitAssignment FromTsv(std::string_view text);

 private:
  std::map<PageRef, DataSplit> pages_;
  std::map<PageRef, std::string> key_of_;
  std::map<std::string, DataSplit> keys_;
};

// Hashes each page key with |seed| into [0,1) and buckets it by cumulative
// ratio. Throws std::invalid_argument unless the ratios are nonnegative and
// sum to 1.
SplitAssignment AssignSplits(std::span<const PageRef> pages,
                             const SplitRatios& ratios, uint64_t seed,
                             const InterlanguageTable& table = {});

// Entity reference for mention |index| of |doc|: entities are typed from
// |types|, dates as date and quantities as number.
EntityRef MakeEntityRef(const Document& doc, int index,
                        const EntityTypeMap& types);

using SplitFiles = std::map<DataSplit, std::map<std::string, std::vector<DatasetRecord>>>;

// Relations x (split, language) counts.
struct CountsTable {
  std::vector<std::string> langs;
  std::map<std::string, std::map<DataSplit, std::map<std::string, size_t>>> cells;

  size_t Total(const std::string& relation, DataSplit split) const;
  // Relations by train total descending, then name.
  std::vector<std::string> RowOrder() const;
  // Header: relation, then <split>.<lang> for every split and language,
  // then one total per split.
  std::string ToTsv() const;
};

CountsTable CountRelations(const SplitFiles& files);

struct BuildResult {
  SplitFiles files;
  CountsTable counts;
};

// Records for the triplets with status |keep| whose pid is in |vocab|,
// typed through |types|, grouped per split and language. Records are
// sorted by doc_id; relations keep input order; documents without a kept
// triplet are omitted. Throws std::logic_error when a kept triplet's page
// has no split.
BuildResult BuildDataset(std::span<const Triplet> triplets, const DocIndex& docs,
                         const RelationVocab& vocab, const EntityTypeMap& types,
                         const SplitAssignment& splits, TripletStatus keep);

inline BuildResult BuildGold(std::span<const Triplet> aggregated,
                             const DocIndex& docs, const RelationVocab& top,
                             const EntityTypeMap& types,
                             const SplitAssignment& splits) {
  return BuildDataset(aggregated, docs, top, types, splits,
                      TripletStatus::kGoldTrue);
}

struct RelationShare {
  size_t count = 0;
  double percent = 0;
};

struct DistributionReport {
  // lang -> relation -> share; "all" aggregates every language.
  std::map<std::string, std::map<std::string, RelationShare>> shares;
  // lang -> percentage of relations in the location-based set.
  std::map<std::string, double> location_percent;
};

// Relation names of the shipped location-based rollup.
std::set<std::string> DefaultLocationRelations();

DistributionReport Distribution(std::span<const DatasetRecord> records,
                                const std::set<std::string>& location_relations);

nlohmann::json ToJson(const DistributionReport& r);

}  // namespace tripletkit

#endif  // TRIPLETKIT_DATASET_BUILD_H_
