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

#ifndef TRIPLETKIT_TRIPLET_EXTRACT_H_
#define TRIPLETKIT_TRIPLET_EXTRACT_H_

// Distant-supervision alignment of documents against a triple store,
// inverse-relation collapsing, top-K relation selection and the entailment
// filter.
//
// Pipeline order: align -> collapse_inverse -> select_top_k -> nli_filter.
// select_top_k is a barrier: all candidates must be counted before any can
// be filtered.

#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tripletkit/scorer.h"
#include "tripletkit/types.h"

namespace tripletkit {

struct Fact {
  std::string subj;  // entity id
  std::string pid;
  std::string obj;  // entity id or normalized literal

  auto operator<=>(const Fact&) const = default;
};

class TripleStore {
 public:
  // Three-column TSV: subj \t pid \t obj.
  static TripleStore Load(const std::string& path);

  // Returns false if the fact was already present.
  bool Add(Fact fact);

  // Pids p such that (subj, p, obj) is stored, in ascending order.
  const std::vector<std::string>* Relations(const std::string& subj,
                                            const std::string& obj) const;

  const std::set<Fact>& facts() const { return facts_; }
  size_t size() const { return facts_.size(); }

 private:
  std::set<Fact> facts_;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      by_pair_;
};

struct RelationEntry {
  std::string pid;
  std::string name_en;
  int rank = 0;

  bool operator==(const RelationEntry&) const = default;
};

class RelationVocab {
 public:
  RelationVocab() = default;
  // Entries keep the given order; ranks are 1..n in that order.
  explicit RelationVocab(std::vector<RelationEntry> entries);

  // Two-column TSV: pid \t English name. Ranks follow file order.
  static RelationVocab Load(const std::string& path);
  // The table shipped in data/relations.tsv.
  static RelationVocab Default();

  const std::vector<RelationEntry>& entries() const { return entries_; }
  bool Contains(const std::string& pid) const;
  // English name, or the pid itself when unnamed.
  const std::string& Name(const std::string& pid) const;
  // Reverse lookup by English name.
  const std::string* PidForName(const std::string& name) const;

  // pid -> canonical pid. Any pid mapped to a different pid is the inverse
  // of its canonical; canonical pids map to themselves.
  const std::map<std::string, std::string>& inverse_map() const {
    return inverse_map_;
  }
  void set_inverse_map(std::map<std::string, std::string> m);

  // Known = named in entries or present in the inverse map.
  bool IsKnown(const std::string& pid) const;

 private:
  std::vector<RelationEntry> entries_;
  std::unordered_map<std::string, size_t> by_pid_;
  std::unordered_map<std::string, size_t> by_name_;
  std::map<std::string, std::string> inverse_map_;
};

// Unordered pairs of mutually inverse pids; TSV pid \t pid. A pid may
// appear in at most one pair.
std::vector<std::pair<std::string, std::string>> LoadInversePairs(
    const std::string& path);
std::vector<std::pair<std::string, std::string>> DefaultInversePairs();

// Chooses the canonical direction of every pair: the pid more frequent in
// |raw| candidates wins, ties go to the smaller pid string.
std::map<std::string, std::string> BuildInverseMap(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::span<const Triplet> raw);

// Triplet id: doc_id/subj/pid/obj. Collapsing re-derives it.
std::string MakeTripletId(const std::string& doc_id, int subj,
                          const std::string& pid, int obj);

// One candidate per ordered mention pair (a, b) and stored fact
// (entity(a), p, value(b)). Subjects must be entity mentions; objects match
// on entity id or normalized literal.
std::vector<Triplet> Align(const Document& doc, const TripleStore& store);

struct Collapsed {
  Triplet triplet;
  bool known = true;  // false: pid unknown, left unchanged
};

Collapsed CollapseInverse(const Triplet& t, const RelationVocab& vocab);

// Drops triplets that denote the same (doc, subj, pid, obj) fact as an
// earlier one. Needed after collapsing when a store holds both directions.
std::vector<Triplet> DedupeFacts(std::vector<Triplet> triplets);

struct TopKResult {
  RelationVocab vocab;  // restricted to the selected pids, ranked by count
  std::vector<Triplet> kept;
  std::map<std::string, size_t> frequencies;  // over the whole input
};

// Keeps triplets whose pid is among the k most frequent (ties broken by
// ascending pid). With per_language, the top k is computed per language
// and the returned vocab is the union. Throws std::invalid_argument if
// k <= 0.
TopKResult SelectTopK(std::span<const Triplet> candidates, int k,
                      const RelationVocab& names, bool per_language = false);

// `subject <sep> relation <sep> object` from mention surfaces.
std::string NliHypothesis(const Triplet& t, const Document& doc,
                          const RelationVocab& vocab);

inline constexpr double kDefaultNliThreshold = 0.1;

struct FilterErrorRecord {
  std::string triplet_id;
  std::string message;
};

// Scores one triplet. score < threshold -> nli_rejected, else silver. On
// scorer failure the triplet is returned unchanged and |error| is filled.
Triplet NliFilter(const Triplet& t, const Document& doc, PairScorer& scorer,
                  const RelationVocab& vocab, double threshold,
                  FilterErrorRecord* error = nullptr);

using DocIndex = std::unordered_map<std::string, const Document*>;
DocIndex IndexDocuments(std::span<const Document> docs);

struct BatchFilterResult {
  std::vector<Triplet> triplets;  // same order as input
  std::vector<FilterErrorRecord> errors;
};

// Batched NliFilter. A failing batch is retried pair by pair so only the
// failing triplets stay candidate.
BatchFilterResult NliFilterBatch(std::span<const Triplet> triplets,
                                 const DocIndex& docs, PairScorer& scorer,
                                 const RelationVocab& vocab, double threshold,
                                 size_t batch_size = 32);

}  // namespace tripletkit

#endif  // TRIPLETKIT_TRIPLET_EXTRACT_H_
