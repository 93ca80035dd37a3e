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

#ifndef TRIPLETKIT_TYPES_H_
#define TRIPLETKIT_TYPES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tripletkit {

// Raised when a record or file does not follow its documented schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The 18 abstract-corpus languages (ISO-639-1).
inline constexpr std::array<std::string_view, 18> kLanguages = {
    "ar", "ca", "de", "el", "en", "es", "fr", "hi", "it",
    "ja", "ko", "nl", "pl", "pt", "ru", "sv", "vi", "zh"};

bool IsSupportedLanguage(std::string_view lang);

// Entity-type tagset; 13 labels.
enum class EntityType : uint8_t {
  kLocation,
  kPerson,
  kNumber,
  kTime,
  kOrganization,
  kDate,
  kEvent,
  kCelestialBody,
  kMedia,
  kDisease,
  kConcept,
  kMiscellaneous,
  kUnknown,
};

inline constexpr int kNumEntityTypes = 13;

std::string_view EntityTypeName(EntityType t);
// Returns nullopt for labels outside the tagset.
std::optional<EntityType> ParseEntityType(std::string_view name);
EntityType EntityTypeFromIndex(int i);

enum class MentionKind : uint8_t { kEntity, kDate, kQuantity };

std::string_view MentionKindName(MentionKind k);
std::optional<MentionKind> ParseMentionKind(std::string_view name);

// A linked span of a document. Offsets are Unicode scalar-value indices,
// half-open.
struct Mention {
  size_t start = 0;
  size_t end = 0;
  std::string surface;
  MentionKind kind = MentionKind::kEntity;
  std::string entity_id;  // kind == kEntity
  std::string literal;    // kind in {kDate, kQuantity}

  // The knowledge-base value this mention denotes.
  const std::string& value() const {
    return kind == MentionKind::kEntity ? entity_id : literal;
  }

  bool operator==(const Mention&) const = default;
};

struct Document {
  std::string doc_id;
  std::string page_id;
  std::string lang;
  std::string title;
  std::string text;
  std::vector<Mention> mentions;

  bool operator==(const Document&) const = default;
};

// Checks the Document invariants: spans in range, surfaces equal to the
// text slice, sorted, overlap-free, and kind/value consistency. Returns an
// empty string when valid, else a description of the first violation.
std::string ValidateDocument(const Document& doc);

enum class TripletStatus : uint8_t {
  kCandidate,
  kSilver,
  kGoldTrue,
  kGoldFalse,
  kCriticRejected,
  kNliRejected,
};

std::string_view TripletStatusName(TripletStatus s);
std::optional<TripletStatus> ParseTripletStatus(std::string_view name);

struct Triplet {
  std::string triplet_id;
  std::string doc_id;
  std::string lang;
  std::string page_id;
  int subj = 0;  // mention index
  int obj = 0;   // mention index
  std::string pid;
  std::optional<double> entail_score;
  std::optional<double> critic_score;
  TripletStatus status = TripletStatus::kCandidate;

  bool operator==(const Triplet&) const = default;
};

// One annotator's verdict on one triplet.
struct Judgment {
  std::string triplet_id;
  std::string annotator_id;
  bool verdict = false;
  int64_t submitted_at = 0;  // unix seconds

  bool operator==(const Judgment&) const = default;
};

// A typed entity occurrence inside a dataset record.
struct EntityRef {
  std::string surface;
  size_t start = 0;
  size_t end = 0;
  EntityType type = EntityType::kUnknown;
  std::string entity_id;  // may be empty (literals, model output)

  bool operator==(const EntityRef&) const = default;
};

struct RelationInstance {
  EntityRef subject;
  EntityRef object;
  std::string relation;  // English relation name
  std::string pid;       // may be empty for model output

  bool operator==(const RelationInstance&) const = default;
};

// One line of a gold/silver dataset file, also the prediction schema.
struct DatasetRecord {
  std::string doc_id;
  std::string page_id;
  std::string lang;
  std::string title;
  std::string text;
  std::vector<RelationInstance> relations;

  bool operator==(const DatasetRecord&) const = default;
};

}  // namespace tripletkit

#endif  // TRIPLETKIT_TYPES_H_
