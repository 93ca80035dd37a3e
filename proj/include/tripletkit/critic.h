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

#ifndef TRIPLETKIT_CRITIC_H_
#define TRIPLETKIT_CRITIC_H_

// Triplet critic: training pairs from human judgments, filtering of silver
// triplets with an external critic scorer, and the binary metric suite.

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tripletkit/scorer.h"
#include "tripletkit/triplet_extract.h"
#include "tripletkit/types.h"

namespace tripletkit {

struct CriticPair {
  std::string premise;
  std::string hypothesis;
  bool label = false;
  std::string lang;

  bool operator==(const CriticPair&) const = default;
};

nlohmann::json ToJson(const CriticPair& p);
CriticPair CriticPairFromJson(const nlohmann::json& j);

// `subject relation object`, single spaces, English relation name.
std::string CriticHypothesis(const Triplet& t, const Document& doc,
                             const RelationVocab& vocab);

struct PairsResult {
  std::vector<CriticPair> pairs;
  std::vector<FilterErrorRecord> errors;
};

// One pair per gold-labelled triplet; label = (status == gold_true).
// Triplets without a document, or not gold-labelled, become error records.
PairsResult MakePairs(std::span<const Triplet> gold, const DocIndex& docs,
                      const RelationVocab& vocab);

inline constexpr double kDefaultCriticThreshold = 0.5;

// Silver triplets below |threshold| become critic_rejected. Any other status
// is returned untouched (never resurrected). Scorer failures leave the
// triplet unchanged and produce an error record.
BatchFilterResult CriticFilterBatch(std::span<const Triplet> triplets,
                                    const DocIndex& docs, PairScorer& scorer,
                                    const RelationVocab& vocab,
                                    double threshold = kDefaultCriticThreshold,
                                    size_t batch_size = 32);

Triplet CriticFilter(const Triplet& t, const Document& doc, PairScorer& scorer,
                     const RelationVocab& vocab,
                     double threshold = kDefaultCriticThreshold,
                     FilterErrorRecord* error = nullptr);

// Percentages in [0,100], unrounded. Precision/recall/F1 are for the
// positive class.
struct CriticMetrics {
  double recall = 0;
  double precision = 0;
  double f1 = 0;
  double accuracy = 0;

  // Same metrics rounded to one decimal, as reported in tables.
  CriticMetrics Rounded() const;
};

// Throws std::invalid_argument on empty or unequal-length input.
CriticMetrics ComputeCriticMetrics(std::span<const bool> preds,
                                   std::span<const bool> golds);

double RoundTo1(double percent);

}  // namespace tripletkit

#endif  // TRIPLETKIT_CRITIC_H_
