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

#include "tripletkit/linearize.h"

#include <algorithm>
#include <array>
#include <map>

#include "embedded_data.h"
#include "tripletkit/records.h"
#include "tripletkit/text.h"

namespace tripletkit {

namespace {

constexpr std::string_view kZwsp = "\xE2\x80\x8B";  // U+200B

constexpr std::array<std::string_view, kNumEntityTypes> kTypeTokens = {
    "<loc>",  "<per>",       "<num>",  "<time>", "<org>",
    "<date>", "<event>",     "<celestial>",      "<media>",
    "<dis>",  "<concept>",   "<misc>", "<unk>"};

bool AtZwsp(std::string_view s, size_t i) {
  return s.compare(i, kZwsp.size(), kZwsp) == 0;
}

// Checks that |e| is a nonempty surface equal to its span in |text|.
void CheckEntity(const EntityRef& e, const Utf8Index& index,
                 std::string_view text, const char* role) {
  if (Trim(e.surface).empty()) {
    throw EncodeError(std::string(role) + " surface is blank");
  }
  if (e.start >= e.end || e.end > index.size() ||
      index.slice(text, e.start, e.end) != e.surface) {
    throw EncodeError(std::string(role) + " surface \"" + e.surface +
                      "\" is not in the text at [" + std::to_string(e.start) +
                      "," + std::to_string(e.end) + ")");
  }
}

bool SameEntity(const EntityRef& a, const EntityRef& b) {
  return a.surface == b.surface && a.start == b.start && a.end == b.end &&
         a.type == b.type;
}

// Relations in target order.
std::vector<const RelationInstance*> Ordered(const DatasetRecord& rec) {
  std::vector<const RelationInstance*> out;
  for (const RelationInstance& r : rec.relations) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const auto* a, const auto* b) {
    return std::tie(a->subject.start, a->subject.end, a->object.start,
                    a->object.end) < std::tie(b->subject.start, b->subject.end,
                                              b->object.start, b->object.end);
  });
  return out;
}

std::string_view SubjectToken(const EntityRef& e, bool typed) {
  return typed ? TypeToken(e.type) : kSubjToken;
}

std::string_view ObjectToken(const EntityRef& e, bool typed) {
  return typed ? TypeToken(e.type) : kObjToken;
}

void Append(std::string* out, std::initializer_list<std::string_view> parts) {
  for (std::string_view p : parts) out->append(p);
}

}  // namespace

std::string_view TypeToken(EntityType t) {
  return kTypeTokens[static_cast<size_t>(t)];
}

std::optional<EntityType> TypeFromToken(std::string_view token) {
  for (int i = 0; i < kNumEntityTypes; ++i) {
    if (kTypeTokens[i] == token) return EntityTypeFromIndex(i);
  }
  return std::nullopt;
}

const std::string& LanguageToken(const std::string& lang) {
  static const std::map<std::string, std::string> kTokens = [] {
    std::map<std::string, std::string> m;
    for (auto& row : ParseTsv(EmbeddedData("lang_tokens.tsv"), 2)) {
      m[row[0]] = row[1];
    }
    return m;
  }();
  auto it = kTokens.find(lang);
  if (it == kTokens.end()) {
    throw std::invalid_argument("no language token for '" + lang + "'");
  }
  return it->second;
}

std::string EscapeSurface(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '<') {
      out += '<';
      out += kZwsp;
    } else if (AtZwsp(s, i)) {
      out += kZwsp;
      out += kZwsp;
      i += kZwsp.size() - 1;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string UnescapeSurface(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '<' && AtZwsp(s, i + 1)) {
      out += '<';
      i += kZwsp.size();
    } else if (AtZwsp(s, i)) {
      out += kZwsp;
      i += kZwsp.size() - 1;
      if (AtZwsp(s, i + 1)) i += kZwsp.size();
    } else {
      out += s[i];
    }
  }
  return out;
}

nlohmann::json ToJson(const LinearizedSample& s) {
  return {{"input", s.input},
          {"target", s.target},
          {"mode", s.mode == Mode::kRE ? "RE" : "RC"},
          {"lang", s.lang}};
}

LinearizedSample LinearizedSampleFromJson(const nlohmann::json& j) {
  try {
    LinearizedSample s;
    s.input = j.at("input").get<std::string>();
    s.target = j.at("target").get<std::string>();
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "RE") {
      s.mode = Mode::kRE;
    } else if (mode == "RC") {
      s.mode = Mode::kRC;
    } else {
      throw FormatError("mode must be RE or RC: " + mode);
    }
    s.lang = j.at("lang").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

LinearizedSample EncodeRe(const DatasetRecord& rec,
                          const EncodeOptions& options) {
  Utf8Index index(rec.text);
  for (const RelationInstance& r : rec.relations) {
    CheckEntity(r.subject, index, rec.text, "subject");
    CheckEntity(r.object, index, rec.text, "object");
    if (Trim(r.relation).empty()) throw EncodeError("relation name is blank");
  }
  LinearizedSample out;
  out.mode = Mode::kRE;
  out.lang = rec.lang;
  out.input = LanguageToken(rec.lang) + " " + rec.text;
  out.target = std::string(kTargetPrefix);
  const EntityRef* subject = nullptr;
  for (const RelationInstance* r : Ordered(rec)) {
    std::string_view st = SubjectToken(r->subject, options.typed);
    if (subject && SameEntity(*subject, r->subject)) {
      Append(&out.target, {" ", st});
    } else {
      if (subject) out.target += ' ';
      Append(&out.target,
             {kTripletToken, " ", EscapeSurface(r->subject.surface), " ", st});
      subject = &r->subject;
    }
    Append(&out.target, {" ", EscapeSurface(r->object.surface), " ",
                         ObjectToken(r->object, options.typed), " ",
                         EscapeSurface(r->relation)});
  }
  return out;
}

LinearizedSample EncodeRc(const DatasetRecord& rec, size_t index,
                          const EncodeOptions& options) {
  const RelationInstance& r = rec.relations.at(index);
  Utf8Index idx(rec.text);
  CheckEntity(r.subject, idx, rec.text, "subject");
  CheckEntity(r.object, idx, rec.text, "object");
  if (Trim(r.relation).empty()) throw EncodeError("relation name is blank");
  if (r.subject.start < r.object.end && r.object.start < r.subject.end) {
    throw EncodeError("subject and object spans overlap");
  }

  struct Marker {
    size_t pos;  // byte offset
    bool open;
    std::string_view text;
  };
  std::array<Marker, 4> markers = {{
      {idx.byte_offset(r.subject.start), true, "# "},
      {idx.byte_offset(r.subject.end), false, " #"},
      {idx.byte_offset(r.object.start), true, "@ "},
      {idx.byte_offset(r.object.end), false, " @"},
  }};
  // Closing markers go first when a span ends where the other starts.
  std::sort(markers.begin(), markers.end(), [](const Marker& a, const Marker& b) {
    return std::tie(a.pos, a.open) < std::tie(b.pos, b.open);
  });
  std::string marked;
  size_t prev = 0;
  for (const Marker& m : markers) {
    marked.append(rec.text, prev, m.pos - prev);
    marked += m.text;
    prev = m.pos;
  }
  marked.append(rec.text, prev);

  LinearizedSample out;
  out.mode = Mode::kRC;
  out.lang = rec.lang;
  out.input = LanguageToken(rec.lang) + " " + marked;
  out.target = std::string(kTargetPrefix);
  Append(&out.target, {kRelationToken, " ", EscapeSurface(r.subject.surface),
                       " ", SubjectToken(r.subject, options.typed), " ",
                       EscapeSurface(r.object.surface), " ",
                       ObjectToken(r.object, options.typed), " ",
                       EscapeSurface(r.relation)});
  return out;
}

std::vector<DecodedTriplet> ExpectedTriplets(const DatasetRecord& rec,
                                             bool typed) {
  std::vector<DecodedTriplet> out;
  for (const RelationInstance* r : Ordered(rec)) {
    DecodedTriplet d{std::string(Trim(r->subject.surface)), r->subject.type,
                     std::string(Trim(r->object.surface)), r->object.type,
                     std::string(Trim(r->relation))};
    if (!typed) d.subject_type = d.object_type = EntityType::kUnknown;
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

class Decoder {
 public:
  Decoder(const DecodeOptions& options, DecodeResult* result)
      : options_(options), result_(result) {}

  void Text(std::string_view s) { buf_.append(s); }

  void Start() {
    CloseGroup(false);
    state_ = State::kSubject;
  }

  void Type(std::string_view token) {
    EntityType type = EntityType::kUnknown;
    if (auto t = TypeFromToken(token)) {
      type = *t;
    } else if (token != kSubjToken && token != kObjToken) {
      Diag("unknown type token " + std::string(token));
    }
    if (!options_.typed) type = EntityType::kUnknown;
    std::string piece = Take();
    switch (state_) {
      case State::kNone:
        Diag("type token outside a triplet group");
        return;
      case State::kSubject:
        current_.subject = std::move(piece);
        current_.subject_type = type;
        break;
      case State::kObject:
        current_.object = std::move(piece);
        current_.object_type = type;
        break;
      case State::kRelation:
        current_.relation = std::move(piece);
        if (!current_.relation.empty()) Emit();
        // The token just read repeats the subject type.
        state_ = State::kObject;
        return;
    }
    if (piece.empty() && (state_ == State::kSubject ? current_.subject.empty()
                                                    : current_.object.empty())) {
      Diag(state_ == State::kSubject ? "empty subject" : "empty object");
      state_ = State::kNone;
      return;
    }
    state_ = state_ == State::kSubject ? State::kObject : State::kRelation;
  }

  void Finish() { CloseGroup(true); }

  void Diag(std::string message) {
    result_->diagnostics.push_back(std::move(message));
  }

 private:
  enum class State { kNone, kSubject, kObject, kRelation };

  std::string Take() {
    std::string piece(Trim(buf_));
    buf_.clear();
    return piece;
  }

  void Emit() {
    result_->triplets.push_back(current_);
    emitted_in_group_ = true;
  }

  // Ends the current group, emitting a completed last triplet and
  // reporting anything left incomplete.
  void CloseGroup(bool at_end) {
    std::string piece = Take();
    switch (state_) {
      case State::kNone:
        if (!piece.empty()) Diag("text outside a triplet group");
        break;
      case State::kSubject:
        Diag("incomplete triplet: subject without type token");
        break;
      case State::kObject:
        if (!piece.empty() || !emitted_in_group_) {
          Diag("incomplete triplet: missing object type token");
        }
        break;
      case State::kRelation:
        if (piece.empty()) {
          Diag("incomplete triplet: missing relation");
        } else if (at_end && options_.relation_names &&
                   !options_.relation_names->count(piece)) {
          Diag("truncated relation \"" + piece + "\"");
        } else {
          current_.relation = std::move(piece);
          Emit();
        }
        break;
    }
    state_ = State::kNone;
    current_ = DecodedTriplet{};
    emitted_in_group_ = false;
  }

  const DecodeOptions& options_;
  DecodeResult* result_;
  State state_ = State::kNone;
  std::string buf_;
  DecodedTriplet current_;
  bool emitted_in_group_ = false;
};

bool IsTagChar(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

}  // namespace

DecodeResult Decode(std::string_view target, const DecodeOptions& options) {
  DecodeResult result;
  Decoder decoder(options, &result);
  std::string_view s = target;
  if (s.starts_with(kTargetPrefix)) {
    s.remove_prefix(kTargetPrefix.size());
  } else {
    decoder.Diag("target does not start with tp_XX");
  }
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && AtZwsp(s, i + 1)) {
      decoder.Text("<");
      i += 1 + kZwsp.size();
      continue;
    }
    if (AtZwsp(s, i)) {
      decoder.Text(kZwsp);
      i += kZwsp.size();
      if (AtZwsp(s, i)) i += kZwsp.size();
      continue;
    }
    if (s[i] != '<') {
      decoder.Text(s.substr(i, 1));
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < s.size() && IsTagChar(s[j])) ++j;
    if (j == s.size()) {
      decoder.Diag("truncated token at end of target");
      i = j;
      break;
    }
    if (s[j] != '>' || j == i + 1) {
      decoder.Text("<");
      ++i;
      continue;
    }
    std::string_view token = s.substr(i, j + 1 - i);
    if (token == kTripletToken || token == kRelationToken) {
      decoder.Start();
    } else {
      decoder.Type(token);
    }
    i = j + 1;
  }
  decoder.Finish();
  return result;
}

std::vector<LinearizedSample> SampleRcFraction(
    std::span<const DatasetRecord> records, double fraction, uint64_t seed,
    const EncodeOptions& options) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("fraction must be in [0,1]");
  }
  std::vector<LinearizedSample> out;
  out.reserve(records.size());
  for (const DatasetRecord& rec : records) {
    bool rc = ToUnit(SeededHash(seed, "rc/" + rec.doc_id)) < fraction;
    if (rc && !rec.relations.empty()) {
      size_t pick = SeededHash(seed, "pick/" + rec.doc_id) % rec.relations.size();
      out.push_back(EncodeRc(rec, pick, options));
    } else {
      out.push_back(EncodeRe(rec, options));
    }
  }
  return out;
}

}  // namespace tripletkit
