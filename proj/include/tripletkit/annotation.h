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

#ifndef TRIPLETKIT_ANNOTATION_H_
#define TRIPLETKIT_ANNOTATION_H_

// Human validation of silver triplets: sampling, HIT batching, majority
// aggregation, Krippendorff's alpha and filtered-percentage statistics.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tripletkit/triplet_extract.h"
#include "tripletkit/types.h"

namespace tripletkit {

struct SamplingConfig {
  uint64_t seed = 0;
  // Size of the inverse-frequency sample drawn from triplets not already
  // selected by the common-pages rule.
  size_t random_sample_size = 0;
  // When nonempty, only triplets with these pids are eligible.
  std::set<std::string> relations;
};

// Per-triplet weight 1/count(pid) over |silver|, normalized to sum to 1.
// Parallel to |silver|.
std::vector<double> InverseFrequencyWeights(std::span<const Triplet> silver);

// Union of (i) triplets of pages present in every language of |langs|
// (page identity = page_id) and (ii) a weighted sample without replacement
// from the rest. Output keeps input order; deterministic under the seed.
std::vector<Triplet> SampleForAnnotation(std::span<const Triplet> silver,
                                         std::span<const std::string> langs,
                                         const SamplingConfig& config);

struct HitItem {
  std::string triplet_id;
  std::string text;
  size_t subj_start = 0, subj_end = 0;
  size_t obj_start = 0, obj_end = 0;
  std::string pid;
  std::string relation;  // English name

  bool operator==(const HitItem&) const = default;
};

struct Hit {
  std::string hit_id;
  std::string lang;
  std::vector<HitItem> items;
  bool partial = false;  // fewer than per_hit items (language remainder)

  bool operator==(const Hit&) const = default;
};

nlohmann::json ToJson(const HitItem& item);
nlohmann::json ToJson(const Hit& hit);
Hit HitFromJson(const nlohmann::json& j);

inline constexpr size_t kItemsPerHit = 10;

// Partitions |sampled| per language (languages in sorted order, triplets in
// input order) into HITs of |per_hit| items; the last HIT of a language may
// be short and is flagged partial. Triplets without a document are skipped.
// Throws std::invalid_argument if per_hit == 0.
std::vector<Hit> AssignHits(std::span<const Triplet> sampled,
                            const DocIndex& docs, const RelationVocab& vocab,
                            size_t per_hit = kItemsPerHit);

enum class Verdict : uint8_t { kGoldTrue, kGoldFalse, kPending };

struct AggregateOptions {
  size_t required = 3;
  size_t quorum = 2;
};

// Keeps the first judgment of each (triplet, annotator), in input order.
std::vector<Judgment> DedupeJudgments(std::span<const Judgment> judgments);

// Majority vote over the first |required| distinct annotators of each
// triplet: >= quorum true -> gold_true, else gold_false; fewer than
// |required| -> pending.
std::map<std::string, Verdict> Aggregate(std::span<const Judgment> judgments,
                                         const AggregateOptions& options = {});

// Single-triplet form over verdicts.
Verdict AggregateVerdicts(std::span<const bool> verdicts,
                          const AggregateOptions& options = {});

// Nominal reliability data: rows are items (triplets), columns coders;
// nullopt marks a missing judgment.
using ReliabilityMatrix = std::vector<std::vector<std::optional<bool>>>;

struct AlphaResult {
  double alpha = 1.0;
  // True when every pairable value is identical (expected disagreement is
  // zero); alpha is reported as 1.0 by convention.
  bool degenerate = false;
  size_t pairable_values = 0;
};

// Krippendorff's alpha for nominal binary data from the coincidence
// matrix. Items with fewer than two values are not pairable and ignored.
// Throws std::invalid_argument when no item has two values.
AlphaResult KrippendorffAlpha(const ReliabilityMatrix& matrix);

// Builds the item x annotator matrix from (deduplicated) judgments; items
// and annotators in sorted id order.
ReliabilityMatrix BuildReliabilityMatrix(std::span<const Judgment> judgments);

// 100 * false / (true + false) per language; languages with no aggregated
// triplet are absent. |lang_of| maps triplet id to language.
std::map<std::string, double> FilteredStats(
    const std::map<std::string, Verdict>& aggregated,
    const std::map<std::string, std::string>& lang_of);

struct AgreementReport {
  std::string lang;
  double alpha = 0;
  bool alpha_degenerate = false;
  bool alpha_defined = false;
  size_t n_annotators = 0;
  std::optional<double> filtered_pct;
};

nlohmann::json ToJson(const AgreementReport& r);

// Alpha and filtered percentage over |judgments|, labeled |lang|. Items
// are placed in a language through |lang_of|.
AgreementReport ComputeAgreement(std::span<const Judgment> judgments,
                                 const std::string& lang,
                                 const std::map<std::string, std::string>& lang_of,
                                 const AggregateOptions& options = {});

}  // namespace tripletkit

#endif  // TRIPLETKIT_ANNOTATION_H_
