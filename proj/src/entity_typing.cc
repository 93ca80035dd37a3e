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

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "tripletkit/records.h"

namespace tripletkit {

namespace {

constexpr std::string_view kCls = "[CLS] ";
constexpr std::string_view kSep = " [SEP] ";
constexpr std::string_view kEnd = " [SEP]";

}  // namespace

SynsetGraph SynsetGraph::Load(const std::string& nodes_path,
                              const std::string& edges_path,
                              const std::string& core_path) {
  SynsetGraph g;
  for (auto& row : ReadTsv(nodes_path, 3)) {
    g.AddNode(std::move(row[0]), std::move(row[1]), std::move(row[2]));
  }
  for (const auto& row : ReadTsv(edges_path, 2)) g.AddEdge(row[0], row[1]);
  for (const auto& row : ReadTsv(core_path, 1)) g.MarkCore(row[0]);
  return g;
}

size_t SynsetGraph::Ensure(const std::string& id) {
  auto [it, inserted] = index_.emplace(id, synsets_.size());
  if (inserted) synsets_.push_back({id, "", "", {}, false});
  return it->second;
}

void SynsetGraph::AddNode(std::string id, std::string lemma,
                          std::string description) {
  Synset& s = synsets_[Ensure(id)];
  s.lemma = std::move(lemma);
  s.description = std::move(description);
}

void SynsetGraph::AddEdge(const std::string& a, const std::string& b) {
  if (a == b) return;
  size_t ia = Ensure(a);
  size_t ib = Ensure(b);
  auto link = [](Synset& s, const std::string& other) {
    if (std::find(s.neighbors.begin(), s.neighbors.end(), other) ==
        s.neighbors.end()) {
      s.neighbors.push_back(other);
    }
  };
  link(synsets_[ia], b);
  link(synsets_[ib], a);
}

void SynsetGraph::MarkCore(const std::string& id) {
  synsets_[Ensure(id)].in_core = true;
}

const Synset* SynsetGraph::Find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &synsets_[it->second];
}

std::string BuildInput(std::string_view lemma, std::string_view description) {
  if (lemma.empty() || description.empty()) {
    throw std::invalid_argument("lemma and description must be nonempty");
  }
  std::string out;
  out.reserve(kCls.size() + lemma.size() + kSep.size() + description.size() +
              kEnd.size());
  out += kCls;
  out += lemma;
  out += kSep;
  out += description;
  out += kEnd;
  return out;
}

std::string BuildInput(const Synset& s) {
  return BuildInput(s.lemma, s.description);
}

std::optional<std::pair<std::string, std::string>> ParseInput(
    std::string_view input) {
  if (!input.starts_with(kCls) || !input.ends_with(kEnd)) return std::nullopt;
  std::string_view body =
      input.substr(kCls.size(), input.size() - kCls.size() - kEnd.size());
  // The lemma ends at the first separator; descriptions may contain more.
  size_t sep = body.find(kSep);
  if (sep == std::string_view::npos || sep == 0 ||
      sep + kSep.size() >= body.size()) {
    return std::nullopt;
  }
  return std::make_pair(std::string(body.substr(0, sep)),
                        std::string(body.substr(sep + kSep.size())));
}

std::vector<Synset> SelectTrainingSubset(std::span<const Synset> synsets) {
  std::unordered_set<std::string> core;
  std::unordered_set<std::string> near_core;  // listed by a core synset
  for (const Synset& s : synsets) {
    if (!s.in_core) continue;
    core.insert(s.synset_id);
    near_core.insert(s.neighbors.begin(), s.neighbors.end());
  }
  std::vector<Synset> out;
  for (const Synset& s : synsets) {
    bool keep = s.in_core || near_core.count(s.synset_id) > 0;
    for (size_t i = 0; !keep && i < s.neighbors.size(); ++i) {
      keep = core.count(s.neighbors[i]) > 0;
    }
    if (keep) out.push_back(s);
  }
  return out;
}

EntityTypeMap EntityTypeMap::Load(const std::string& path) {
  EntityTypeMap map;
  for (const auto& row : ReadTsv(path, 2)) {
    auto type = ParseEntityType(row[1]);
    if (!type) throw FormatError(path + ": label outside tagset: " + row[1]);
    map.Set(row[0], *type);
  }
  return map;
}

std::string EntityTypeMap::ToTsv() const {
  std::string out;
  for (const auto& [id, type] : entries_) {
    out += id;
    out += '\t';
    out += EntityTypeName(type);
    out += '\n';
  }
  return out;
}

std::optional<EntityType> EntityTypeMap::Get(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

EntityType EntityTypeMap::TypeOf(const std::string& id) const {
  return Get(id).value_or(EntityType::kUnknown);
}

MergeResult ConfirmOrReplace(const EntityTypeMap& prior,
                             const EntityTypeMap& predicted) {
  MergeResult r;
  for (const auto& [id, type] : prior.entries()) {
    auto p = predicted.Get(id);
    if (!p) throw std::invalid_argument("prediction missing for " + id);
    if (*p == type) {
      ++r.confirmations;
    } else {
      ++r.changes;
    }
  }
  for (const auto& [id, type] : predicted.entries()) {
    if (!prior.Get(id)) ++r.added;
    r.final_map.Set(id, type);
  }
  return r;
}

std::vector<EntityType> MockTypeClassifier::Classify(
    std::span<const std::string> inputs) {
  std::vector<EntityType> out;
  out.reserve(inputs.size());
  for (const std::string& in : inputs) {
    auto parsed = ParseInput(in);
    if (!parsed) {
      out.push_back(fallback_);
      continue;
    }
    auto it = labels_.find(parsed->first);
    out.push_back(it == labels_.end() ? fallback_ : it->second);
  }
  return out;
}

EntityTypeMap PredictTypes(
    std::span<const Synset> synsets,
    const std::map<std::string, std::string>& synset_to_entity,
    TypeClassifier& classifier) {
  std::vector<std::string> inputs;
  std::vector<const std::string*> entities;
  for (const Synset& s : synsets) {
    auto it = synset_to_entity.find(s.synset_id);
    if (it == synset_to_entity.end() || s.lemma.empty() ||
        s.description.empty()) {
      continue;
    }
    inputs.push_back(BuildInput(s));
    entities.push_back(&it->second);
  }
  auto labels = classifier.Classify(inputs);
  if (labels.size() != inputs.size()) {
    throw std::runtime_error("classifier returned wrong number of labels");
  }
  EntityTypeMap map;
  for (size_t i = 0; i < labels.size(); ++i) map.Set(*entities[i], labels[i]);
  return map;
}

}  // namespace tripletkit
