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

#include "tripletkit/critic.h"

#include <cmath>
#include <stdexcept>

namespace tripletkit {

nlohmann::json ToJson(const CriticPair& p) {
  return {{"premise", p.premise},
          {"hypothesis", p.hypothesis},
          {"label", p.label},
          {"lang", p.lang}};
}

CriticPair CriticPairFromJson(const nlohmann::json& j) {
  try {
    return {j.at("premise").get<std::string>(),
            j.at("hypothesis").get<std::string>(), j.at("label").get<bool>(),
            j.value("lang", "")};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

std::string CriticHypothesis(const Triplet& t, const Document& doc,
                             const RelationVocab& vocab) {
  return doc.mentions.at(t.subj).surface + " " + vocab.Name(t.pid) + " " +
         doc.mentions.at(t.obj).surface;
}

PairsResult MakePairs(std::span<const Triplet> gold, const DocIndex& docs,
                      const RelationVocab& vocab) {
  PairsResult out;
  for (const Triplet& t : gold) {
    if (t.status != TripletStatus::kGoldTrue &&
        t.status != TripletStatus::kGoldFalse) {
      out.errors.push_back({t.triplet_id, "triplet has no human label"});
      continue;
    }
    auto it = docs.find(t.doc_id);
    if (it == docs.end()) {
      out.errors.push_back({t.triplet_id, "document not found"});
      continue;
    }
    const Document& doc = *it->second;
    out.pairs.push_back({doc.text, CriticHypothesis(t, doc, vocab),
                         t.status == TripletStatus::kGoldTrue, doc.lang});
  }
  return out;
}

BatchFilterResult CriticFilterBatch(std::span<const Triplet> triplets,
                                    const DocIndex& docs, PairScorer& scorer,
                                    const RelationVocab& vocab,
                                    double threshold, size_t batch_size) {
  BatchFilterResult result;
  result.triplets.assign(triplets.begin(), triplets.end());
  std::vector<ScoringPair> pairs;
  std::vector<size_t> slots;
  for (size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    if (t.status != TripletStatus::kSilver) continue;
    auto it = docs.find(t.doc_id);
    if (it == docs.end()) {
      result.errors.push_back({t.triplet_id, "document not found"});
      continue;
    }
    const Document& doc = *it->second;
    pairs.push_back({doc.doc_id, doc.text, CriticHypothesis(t, doc, vocab)});
    slots.push_back(i);
  }
  BatchScores scores = ScoreBatched(pairs, scorer, batch_size);
  for (size_t k = 0; k < slots.size(); ++k) {
    Triplet& t = result.triplets[slots[k]];
    if (!scores.scores[k]) {
      result.errors.push_back({t.triplet_id, scores.errors[k]});
      continue;
    }
    t.critic_score = *scores.scores[k];
    if (*scores.scores[k] < threshold) t.status = TripletStatus::kCriticRejected;
  }
  return result;
}

Triplet CriticFilter(const Triplet& t, const Document& doc, PairScorer& scorer,
                     const RelationVocab& vocab, double threshold,
                     FilterErrorRecord* error) {
  DocIndex docs{{doc.doc_id, &doc}};
  auto result = CriticFilterBatch(std::span<const Triplet>(&t, 1), docs, scorer,
                                  vocab, threshold, 1);
  if (!result.errors.empty() && error != nullptr) *error = result.errors[0];
  return result.triplets[0];
}

double RoundTo1(double percent) { return std::round(percent * 10.0) / 10.0; }

CriticMetrics CriticMetrics::Rounded() const {
  return {RoundTo1(recall), RoundTo1(precision), RoundTo1(f1),
          RoundTo1(accuracy)};
}

CriticMetrics ComputeCriticMetrics(std::span<const bool> preds,
                                   std::span<const bool> golds) {
  if (preds.empty() || preds.size() != golds.size()) {
    throw std::invalid_argument(
        "critic metrics need equal-length, nonempty vectors");
  }
  size_t tp = 0, fp = 0, fn = 0, correct = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] && golds[i]) ++tp;
    if (preds[i] && !golds[i]) ++fp;
    if (!preds[i] && golds[i]) ++fn;
    if (preds[i] == golds[i]) ++correct;
  }
  CriticMetrics m;
  double p = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  double r = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  m.precision = 100.0 * p;
  m.recall = 100.0 * r;
  m.f1 = p + r > 0 ? 100.0 * 2 * p * r / (p + r) : 0.0;
  m.accuracy = 100.0 * static_cast<double>(correct) / preds.size();
  return m;
}

}  // namespace tripletkit
