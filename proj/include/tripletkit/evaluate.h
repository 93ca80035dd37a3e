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

#ifndef TRIPLETKIT_EVALUATE_H_
#define TRIPLETKIT_EVALUATE_H_

// Relation extraction and classification scoring.
//
// A predicted relation matches a gold one when both entity spans and the
// relation name agree (boundaries), and additionally both entity types
// agree (strict). Each gold is consumed at most once. Surface mode compares
// whitespace-normalized surfaces instead of spans, for data without
// offsets and for decoded model output.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tripletkit/linearize.h"
#include "tripletkit/types.h"

namespace tripletkit {

enum class MatchMode : uint8_t { kStrict, kBoundaries };

std::string_view MatchModeName(MatchMode m);
// Throws std::invalid_argument for names other than strict/boundaries.
MatchMode ParseMatchMode(std::string_view name);

struct ScoreOptions {
  MatchMode mode = MatchMode::kStrict;
  bool surface_only = false;
};

struct Counts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;

  double Precision() const;
  double Recall() const;
  // 2PR/(P+R), 0 when P+R = 0.
  double F1() const;

  Counts& operator+=(const Counts& o);
  bool operator==(const Counts&) const = default;
};

// Fractions in [0,1].
struct Scores {
  Counts counts;
  double precision = 0;
  double recall = 0;
  double micro_f1 = 0;
  double macro_f1 = 0;  // mean F1 over relations seen in golds or preds
  std::map<std::string, Counts> per_relation;
};

struct ScoreReport {
  ScoreOptions options;
  Scores overall;
  std::map<std::string, Scores> per_language;
};

// Index pairs (pred, gold) of a one-to-one matching inside one document.
// Exact duplicates are collapsed first (|preds|/|golds| index the
// deduplicated lists returned through the out parameters). Strict-equal
// pairs are matched first, so strict matches are a subset of boundaries
// matches on the same input.
struct DocMatch {
  std::vector<RelationInstance> preds;
  std::vector<RelationInstance> golds;
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<bool> pred_matched;
  std::vector<bool> gold_matched;
};
DocMatch MatchDocument(std::span<const RelationInstance> preds,
                       std::span<const RelationInstance> golds,
                       const ScoreOptions& options);

// Documents are joined on doc_id; a prediction for an unknown document is
// all false positives, a gold document without predictions all false
// negatives. Unknown relation names are simply false positives.
ScoreReport ScoreRe(std::span<const DatasetRecord> preds,
                    std::span<const DatasetRecord> golds,
                    const ScoreOptions& options = {});

struct RcScores {
  double precision = 0;
  double recall = 0;
  double micro_f1 = 0;
  double accuracy = 0;
};

inline constexpr std::string_view kNoRelation = "no_relation";

// Micro-F1 with |negative| excluded from the positive classes; accuracy
// over all labels. Throws std::invalid_argument on length mismatch.
RcScores ScoreRc(std::span<const std::string> preds,
                 std::span<const std::string> golds,
                 std::string_view negative = kNoRelation);

enum class ErrorBucket : uint8_t {
  kEntityType,
  kSpanUnderlap,
  kSpanOverlap,
  kSubject,
  kObject,
  kRelation,
  kOther,
};
inline constexpr int kNumErrorBuckets = 7;
std::string_view ErrorBucketName(ErrorBucket b);

// Classifies one unmatched prediction against the golds of its document;
// the first applicable bucket in enum order wins.
ErrorBucket ClassifyError(const RelationInstance& pred,
                          std::span<const RelationInstance> golds,
                          bool surface_only = false);

// Buckets every strict-mode false positive. Counts sum to the strict
// false-positive total.
std::map<ErrorBucket, size_t> BucketErrors(std::span<const DatasetRecord> preds,
                                           std::span<const DatasetRecord> golds,
                                           bool surface_only = false);

// A prediction record from a raw model target: decoded relations carry
// surfaces and types but no offsets, so score it in surface mode.
DatasetRecord PredictionFromTarget(const std::string& doc_id,
                                   const std::string& lang,
                                   std::string_view target,
                                   const DecodeOptions& options = {});

nlohmann::json ToJson(const ScoreReport& r);

// Percentage with one decimal ("93.2") from a fraction.
std::string FormatPercent(double fraction);

// Fixed-width text tables for the CLI.
std::string FormatReport(const ScoreReport& r, bool per_relation,
                         bool per_language);

}  // namespace tripletkit

#endif  // TRIPLETKIT_EVALUATE_H_
