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

#include "tripletkit/types.h"

#include <algorithm>

#include "tripletkit/text.h"

namespace tripletkit {

namespace {

constexpr std::array<std::string_view, kNumEntityTypes> kEntityTypeNames = {
    "location", "person",       "number",  "time",
    "organization", "date",     "event",   "celestial body",
    "media",    "disease",      "concept", "miscellaneous",
    "unknown"};

constexpr std::array<std::string_view, 6> kStatusNames = {
    "candidate",  "silver",          "gold_true",
    "gold_false", "critic_rejected", "nli_rejected"};

constexpr std::array<std::string_view, 3> kKindNames = {"entity", "date",
                                                        "quantity"};

}  // namespace

bool IsSupportedLanguage(std::string_view lang) {
  return std::find(kLanguages.begin(), kLanguages.end(), lang) !=
         kLanguages.end();
}

std::string_view EntityTypeName(EntityType t) {
  return kEntityTypeNames[static_cast<size_t>(t)];
}

std::optional<EntityType> ParseEntityType(std::string_view name) {
  for (size_t i = 0; i < kEntityTypeNames.size(); ++i) {
    if (kEntityTypeNames[i] == name) return static_cast<EntityType>(i);
  }
  return std::nullopt;
}

EntityType EntityTypeFromIndex(int i) {
  if (i < 0 || i >= kNumEntityTypes) {
    throw std::out_of_range("entity type index");
  }
  return static_cast<EntityType>(i);
}

std::string_view MentionKindName(MentionKind k) {
  return kKindNames[static_cast<size_t>(k)];
}

std::optional<MentionKind> ParseMentionKind(std::string_view name) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<MentionKind>(i);
  }
  return std::nullopt;
}

std::string_view TripletStatusName(TripletStatus s) {
  return kStatusNames[static_cast<size_t>(s)];
}

std::optional<TripletStatus> ParseTripletStatus(std::string_view name) {
  for (size_t i = 0; i < kStatusNames.size(); ++i) {
    if (kStatusNames[i] == name) return static_cast<TripletStatus>(i);
  }
  return std::nullopt;
}

std::string ValidateDocument(const Document& doc) {
  Utf8Index index(doc.text);
  size_t prev_end = 0;
  for (size_t i = 0; i < doc.mentions.size(); ++i) {
    const Mention& m = doc.mentions[i];
    const std::string where = "mention " + std::to_string(i) + ": ";
    if (m.start >= m.end) return where + "empty span";
    if (m.end > index.size()) return where + "span out of range";
    if (index.slice(doc.text, m.start, m.end) != m.surface) {
      return where + "surface differs from text slice";
    }
    if (m.surface.empty()) return where + "empty surface";
    if (i > 0 && m.start < prev_end) return where + "unsorted or overlapping";
    if (m.kind == MentionKind::kEntity) {
      if (m.entity_id.empty() || !m.literal.empty()) {
        return where + "entity mention needs exactly an entity id";
      }
    } else if (m.literal.empty() || !m.entity_id.empty()) {
      return where + "value mention needs exactly a literal";
    }
    prev_end = m.end;
  }
  return {};
}

}  // namespace tripletkit
