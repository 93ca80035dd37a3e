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

#include "tripletkit/triplet_extract.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "embedded_data.h"
#include "tripletkit/records.h"
#include "tripletkit/text.h"

namespace tripletkit {

namespace {

std::vector<std::pair<std::string, std::string>> PairsFromRows(
    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> seen;
  for (const auto& row : rows) {
    if (row[0] == row[1]) throw FormatError("self-inverse pair: " + row[0]);
    for (const std::string& pid : {row[0], row[1]}) {
      if (!seen.insert(pid).second) {
        throw FormatError("pid in more than one inverse pair: " + pid);
      }
    }
    pairs.emplace_back(row[0], row[1]);
  }
  return pairs;
}

// Descending count, ascending pid.
std::vector<std::pair<std::string, size_t>> Ranked(
    const std::map<std::string, size_t>& freq) {
  std::vector<std::pair<std::string, size_t>> order(freq.begin(), freq.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return x.second > y.second;
  });
  return order;
}

}  // namespace

// TripleStore

TripleStore TripleStore::Load(const std::string& path) {
  TripleStore store;
  for (auto& row : ReadTsv(path, 3)) {
    store.Add({std::move(row[0]), std::move(row[1]), std::move(row[2])});
  }
  return store;
}

bool TripleStore::Add(Fact fact) {
  auto [it, inserted] = facts_.insert(fact);
  if (!inserted) return false;
  auto& pids = by_pair_[{it->subj, it->obj}];
  pids.insert(std::upper_bound(pids.begin(), pids.end(), it->pid), it->pid);
  return true;
}

const std::vector<std::string>* TripleStore::Relations(
    const std::string& subj, const std::string& obj) const {
  auto it = by_pair_.find({subj, obj});
  return it == by_pair_.end() ? nullptr : &it->second;
}

// RelationVocab

RelationVocab::RelationVocab(std::vector<RelationEntry> entries)
    : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    entries_[i].rank = static_cast<int>(i) + 1;
    by_pid_.emplace(entries_[i].pid, i);
    by_name_.emplace(entries_[i].name_en, i);
  }
}

RelationVocab RelationVocab::Load(const std::string& path) {
  std::vector<RelationEntry> entries;
  for (auto& row : ReadTsv(path, 2)) {
    entries.push_back({std::move(row[0]), std::move(row[1]), 0});
  }
  return RelationVocab(std::move(entries));
}

RelationVocab RelationVocab::Default() {
  std::vector<RelationEntry> entries;
  for (auto& row : ParseTsv(EmbeddedData("relations.tsv"), 2)) {
    entries.push_back({std::move(row[0]), std::move(row[1]), 0});
  }
  return RelationVocab(std::move(entries));
}

bool RelationVocab::Contains(const std::string& pid) const {
  return by_pid_.count(pid) > 0;
}

const std::string& RelationVocab::Name(const std::string& pid) const {
  auto it = by_pid_.find(pid);
  return it == by_pid_.end() ? pid : entries_[it->second].name_en;
}

const std::string* RelationVocab::PidForName(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &entries_[it->second].pid;
}

void RelationVocab::set_inverse_map(std::map<std::string, std::string> m) {
  inverse_map_ = std::move(m);
}

bool RelationVocab::IsKnown(const std::string& pid) const {
  return Contains(pid) || inverse_map_.count(pid) > 0;
}

std::vector<std::pair<std::string, std::string>> LoadInversePairs(
    const std::string& path) {
  return PairsFromRows(ReadTsv(path, 2));
}

std::vector<std::pair<std::string, std::string>> DefaultInversePairs() {
  return PairsFromRows(ParseTsv(EmbeddedData("inverse_relations.tsv"), 2));
}

std::map<std::string, std::string> BuildInverseMap(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::span<const Triplet> raw) {
  std::map<std::string, size_t> freq;
  for (const Triplet& t : raw) ++freq[t.pid];
  std::map<std::string, std::string> map;
  for (const auto& [a, b] : pairs) {
    size_t fa = freq.count(a) ? freq[a] : 0;
    size_t fb = freq.count(b) ? freq[b] : 0;
    const std::string& canon = (fa > fb || (fa == fb && a < b)) ? a : b;
    map[a] = canon;
    map[b] = canon;
  }
  return map;
}

std::string MakeTripletId(const std::string& doc_id, int subj,
                          const std::string& pid, int obj) {
  return doc_id + "/" + std::to_string(subj) + "/" + pid + "/" +
         std::to_string(obj);
}

std::vector<Triplet> Align(const Document& doc, const TripleStore& store) {
  std::vector<Triplet> out;
  const auto& ms = doc.mentions;
  for (size_t a = 0; a < ms.size(); ++a) {
    if (ms[a].kind != MentionKind::kEntity) continue;
    for (size_t b = 0; b < ms.size(); ++b) {
      if (a == b) continue;
      const auto* pids = store.Relations(ms[a].entity_id, ms[b].value());
      if (pids == nullptr) continue;
      for (const std::string& pid : *pids) {
        Triplet t;
        t.subj = static_cast<int>(a);
        t.obj = static_cast<int>(b);
        t.pid = pid;
        t.doc_id = doc.doc_id;
        t.lang = doc.lang;
        t.page_id = doc.page_id;
        t.triplet_id = MakeTripletId(doc.doc_id, t.subj, pid, t.obj);
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

Collapsed CollapseInverse(const Triplet& t, const RelationVocab& vocab) {
  const auto& map = vocab.inverse_map();
  auto it = map.find(t.pid);
  if (it == map.end()) return {t, vocab.Contains(t.pid)};
  Collapsed out{t, true};
  if (it->second != t.pid) {
    out.triplet.pid = it->second;
    std::swap(out.triplet.subj, out.triplet.obj);
    out.triplet.triplet_id = MakeTripletId(t.doc_id, out.triplet.subj,
                                           out.triplet.pid, out.triplet.obj);
  }
  return out;
}

std::vector<Triplet> DedupeFacts(std::vector<Triplet> triplets) {
  std::set<std::tuple<std::string, int, std::string, int>> seen;
  std::vector<Triplet> out;
  out.reserve(triplets.size());
  for (Triplet& t : triplets) {
    if (seen.emplace(t.doc_id, t.subj, t.pid, t.obj).second) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

TopKResult SelectTopK(std::span<const Triplet> candidates, int k,
                      const RelationVocab& names, bool per_language) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  auto top_of = [k](const std::map<std::string, size_t>& freq) {
    auto order = Ranked(freq);
    if (order.size() > static_cast<size_t>(k)) order.resize(k);
    return order;
  };

  TopKResult result;
  for (const Triplet& t : candidates) ++result.frequencies[t.pid];

  std::map<std::string, std::set<std::string>> allowed;  // lang -> pids
  std::set<std::string> global;
  if (per_language) {
    std::map<std::string, std::map<std::string, size_t>> by_lang;
    for (const Triplet& t : candidates) ++by_lang[t.lang][t.pid];
    for (const auto& [lang, freq] : by_lang) {
      for (const auto& [pid, n] : top_of(freq)) {
        allowed[lang].insert(pid);
        global.insert(pid);
      }
    }
  } else {
    for (const auto& [pid, n] : top_of(result.frequencies)) global.insert(pid);
  }

  // Vocab ranked by global frequency; a per-language union may exceed k.
  std::map<std::string, size_t> selected;
  for (const std::string& pid : global) selected[pid] = result.frequencies[pid];
  std::vector<RelationEntry> entries;
  for (const auto& [pid, n] : Ranked(selected)) {
    entries.push_back({pid, names.Name(pid), 0});
  }
  result.vocab = RelationVocab(std::move(entries));
  result.vocab.set_inverse_map(names.inverse_map());

  for (const Triplet& t : candidates) {
    bool keep = per_language ? allowed[t.lang].count(t.pid) > 0
                             : global.count(t.pid) > 0;
    if (keep) result.kept.push_back(t);
  }
  return result;
}

std::string NliHypothesis(const Triplet& t, const Document& doc,
                          const RelationVocab& vocab) {
  return doc.mentions.at(t.subj).surface + " <sep> " + vocab.Name(t.pid) +
         " <sep> " + doc.mentions.at(t.obj).surface;
}

Triplet NliFilter(const Triplet& t, const Document& doc, PairScorer& scorer,
                  const RelationVocab& vocab, double threshold,
                  FilterErrorRecord* error) {
  ScoringPair pair{doc.doc_id, doc.text, NliHypothesis(t, doc, vocab)};
  Triplet out = t;
  try {
    auto scores = scorer.Score(std::span<const ScoringPair>(&pair, 1));
    if (scores.size() != 1) throw ScorerError("score count mismatch");
    out.entail_score = scores[0];
    out.status = scores[0] < threshold ? TripletStatus::kNliRejected
                                       : TripletStatus::kSilver;
  } catch (const ScorerError& e) {
    if (error != nullptr) *error = {t.triplet_id, e.what()};
  }
  return out;
}

DocIndex IndexDocuments(std::span<const Document> docs) {
  DocIndex index;
  for (const Document& d : docs) index.emplace(d.doc_id, &d);
  return index;
}

BatchFilterResult NliFilterBatch(std::span<const Triplet> triplets,
                                 const DocIndex& docs, PairScorer& scorer,
                                 const RelationVocab& vocab, double threshold,
                                 size_t batch_size) {
  BatchFilterResult result;
  result.triplets.assign(triplets.begin(), triplets.end());
  std::vector<ScoringPair> pairs;
  std::vector<size_t> slots;
  for (size_t i = 0; i < triplets.size(); ++i) {
    auto it = docs.find(triplets[i].doc_id);
    if (it == docs.end()) {
      result.errors.push_back({triplets[i].triplet_id, "document not found"});
      continue;
    }
    const Document& doc = *it->second;
    pairs.push_back({doc.doc_id, doc.text, NliHypothesis(triplets[i], doc, vocab)});
    slots.push_back(i);
  }
  BatchScores scores = ScoreBatched(pairs, scorer, batch_size);
  for (size_t k = 0; k < slots.size(); ++k) {
    Triplet& t = result.triplets[slots[k]];
    if (!scores.scores[k]) {
      result.errors.push_back({t.triplet_id, scores.errors[k]});
      continue;
    }
    t.entail_score = *scores.scores[k];
    t.status = *scores.scores[k] < threshold ? TripletStatus::kNliRejected
                                             : TripletStatus::kSilver;
  }
  return result;
}

}  // namespace tripletkit
