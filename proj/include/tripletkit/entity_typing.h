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

#ifndef TRIPLETKIT_ENTITY_TYPING_H_
#define TRIPLETKIT_ENTITY_TYPING_H_

// Entity-type map maintenance: classifier input construction, selection of
// the training subset near the curated core synsets, seeded train/val
// split, and confirm-or-replace merging of prior and predicted labels.

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tripletkit/text.h"
#include "tripletkit/types.h"

namespace tripletkit {

struct Synset {
  std::string synset_id;
  std::string lemma;
  std::string description;
  std::vector<std::string> neighbors;  // hypernym/hyponym edges, undirected
  bool in_core = false;

  bool operator==(const Synset&) const = default;
};

class SynsetGraph {
 public:
  // nodes: synset_id \t lemma \t description
  // edges: synset_id \t synset_id (hypernymy or hyponymy, either direction)
  // core:  one synset_id per line
  static SynsetGraph Load(const std::string& nodes_path,
                          const std::string& edges_path,
                          const std::string& core_path);

  void AddNode(std::string id, std::string lemma, std::string description);
  // Adds the edge in both directions; unknown endpoints are created empty.
  void AddEdge(const std::string& a, const std::string& b);
  void MarkCore(const std::string& id);

  const std::vector<Synset>& synsets() const { return synsets_; }
  const Synset* Find(const std::string& id) const;

 private:
  size_t Ensure(const std::string& id);

  std::vector<Synset> synsets_;
  std::unordered_map<std::string, size_t> index_;
};

// "[CLS] <lemma> [SEP] <description> [SEP]". Throws std::invalid_argument
// when either part is empty.
std::string BuildInput(const Synset& s);
std::string BuildInput(std::string_view lemma, std::string_view description);

// Inverse of BuildInput; nullopt for strings outside the template.
std::optional<std::pair<std::string, std::string>> ParseInput(
    std::string_view input);

// Synsets at graph distance <= 1 from a core synset, in input order.
// An edge listed on either endpoint counts. Neighbors absent from |synsets|
// count as non-core.
std::vector<Synset> SelectTrainingSubset(std::span<const Synset> synsets);

// Seeded shuffle, then the first round(ratio * n) items go to train.
// Throws std::invalid_argument unless 0 < ratio < 1.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> SplitTrainVal(std::vector<T> items,
                                                        double ratio,
                                                        uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("ratio must be in (0,1)");
  }
  Rng rng(seed);
  rng.Shuffle(&items);
  auto cut = static_cast<size_t>(std::llround(ratio * items.size()));
  std::vector<T> val(std::make_move_iterator(items.begin() + cut),
                     std::make_move_iterator(items.end()));
  items.resize(cut);
  return {std::move(items), std::move(val)};
}

class EntityTypeMap {
 public:
  // Two-column TSV: entity_id \t label. Labels outside the tagset raise
  // FormatError.
  static EntityTypeMap Load(const std::string& path);
  std::string ToTsv() const;

  void Set(const std::string& entity_id, EntityType type) {
    entries_[entity_id] = type;
  }
  std::optional<EntityType> Get(const std::string& entity_id) const;
  // Entities absent from the map are typed unknown.
  EntityType TypeOf(const std::string& entity_id) const;

  const std::map<std::string, EntityType>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, EntityType> entries_;
};

struct MergeResult {
  EntityTypeMap final_map;
  size_t confirmations = 0;
  size_t changes = 0;
  size_t added = 0;  // keys only in |predicted|
};

// final = predicted. Throws std::invalid_argument if |predicted| misses a
// key of |prior|.
MergeResult ConfirmOrReplace(const EntityTypeMap& prior,
                             const EntityTypeMap& predicted);

// External classifier: one label per BuildInput string.
class TypeClassifier {
 public:
  virtual ~TypeClassifier() = default;
  virtual std::vector<EntityType> Classify(
      std::span<const std::string> inputs) = 0;
};

// Looks labels up by lemma; unlisted lemmas get |fallback|.
class MockTypeClassifier : public TypeClassifier {
 public:
  explicit MockTypeClassifier(EntityType fallback = EntityType::kUnknown)
      : fallback_(fallback) {}
  void Set(const std::string& lemma, EntityType type) { labels_[lemma] = type; }
  std::vector<EntityType> Classify(std::span<const std::string> inputs) override;

 private:
  EntityType fallback_;
  std::unordered_map<std::string, EntityType> labels_;
};

// Labels every synset of |synsets| whose id maps to an entity in
// |synset_to_entity|.
EntityTypeMap PredictTypes(std::span<const Synset> synsets,
                           const std::map<std::string, std::string>& synset_to_entity,
                           TypeClassifier& classifier);

}  // namespace tripletkit

#endif  // TRIPLETKIT_ENTITY_TYPING_H_
