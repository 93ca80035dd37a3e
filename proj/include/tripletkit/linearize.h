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

#ifndef TRIPLETKIT_LINEARIZE_H_
#define TRIPLETKIT_LINEARIZE_H_

// Seq2seq target grammar for relation extraction (RE) and relation
// classification (RC), and its tolerant decoder.
//
//   RE target: tp_XX<triplet> S <ts> O1 <to1> R1 <ts> O2 <to2> R2 <triplet> ...
//   RC target: tp_XX<relation> S <ts> O <to> R
//   RC input:  <lang token> text with "# S #" and "@ O @" marked
//
// <ts>/<to> are entity-type tokens; the subject type token is repeated
// before every further object of the same subject. Untyped targets use
// <subj>/<obj> instead. Every '<' inside a surface or relation name is
// followed by U+200B (and a literal U+200B is doubled) so content never
// forms a grammar token. See docs/formats.md for the full grammar.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tripletkit/types.h"

namespace tripletkit {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kTargetPrefix = "tp_XX";
inline constexpr std::string_view kTripletToken = "<triplet>";
inline constexpr std::string_view kRelationToken = "<relation>";
inline constexpr std::string_view kSubjToken = "<subj>";
inline constexpr std::string_view kObjToken = "<obj>";

std::string_view TypeToken(EntityType t);
// Inverse of TypeToken; nullopt for any other string.
std::optional<EntityType> TypeFromToken(std::string_view token);

// Source-language token ("nl" -> "nl_XX"). Throws std::invalid_argument
// for languages missing from data/lang_tokens.tsv.
const std::string& LanguageToken(const std::string& lang);

std::string EscapeSurface(std::string_view s);
std::string UnescapeSurface(std::string_view s);

enum class Mode : uint8_t { kRE, kRC };

struct LinearizedSample {
  std::string input;
  std::string target;
  Mode mode = Mode::kRE;
  std::string lang;

  bool operator==(const LinearizedSample&) const = default;
};

nlohmann::json ToJson(const LinearizedSample& s);
LinearizedSample LinearizedSampleFromJson(const nlohmann::json& j);

struct EncodeOptions {
  bool typed = true;
};

// Relations ordered by subject offset then object offset (stable), grouped
// by subject. Throws EncodeError when a surface is empty or differs from
// the text slice at its span, or a relation name is empty.
LinearizedSample EncodeRe(const DatasetRecord& rec,
                          const EncodeOptions& options = {});

// Marks relation |index| of |rec|. Throws EncodeError on overlapping
// spans or a surface/span mismatch, std::out_of_range on a bad index.
LinearizedSample EncodeRc(const DatasetRecord& rec, size_t index,
                          const EncodeOptions& options = {});

struct DecodedTriplet {
  std::string subject;
  EntityType subject_type = EntityType::kUnknown;
  std::string object;
  EntityType object_type = EntityType::kUnknown;
  std::string relation;

  bool operator==(const DecodedTriplet&) const = default;
};

struct DecodeResult {
  std::vector<DecodedTriplet> triplets;
  std::vector<std::string> diagnostics;
};

struct DecodeOptions {
  bool typed = true;
  // When set, a final triplet whose relation is not listed is treated as
  // a truncated fragment and dropped.
  const std::set<std::string>* relation_names = nullptr;
};

// Never throws. Incomplete fragments are dropped and reported.
DecodeResult Decode(std::string_view target, const DecodeOptions& options = {});

// The triplets EncodeRe serializes, in target order; what Decode should
// return for its output.
std::vector<DecodedTriplet> ExpectedTriplets(const DatasetRecord& rec,
                                             bool typed = true);

// Converts each record to RE, except that a seeded Bernoulli(fraction)
// draw per doc_id turns it into RC on one seeded-random relation. Records
// without relations stay RE. Throws std::invalid_argument unless fraction
// is in [0,1].
std::vector<LinearizedSample> SampleRcFraction(
    std::span<const DatasetRecord> records, double fraction, uint64_t seed,
    const EncodeOptions& options = {});

}  // namespace tripletkit

#endif  // TRIPLETKIT_LINEARIZE_H_
