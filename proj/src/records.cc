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

#include "tripletkit/records.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tripletkit/text.h"

namespace tripletkit {

namespace {

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object()) throw FormatError("record is not an object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field: ") + name);
  return *it;
}

std::string StringField(const Json& j, const char* name) {
  const Json& v = Field(j, name);
  if (!v.is_string()) {
    throw FormatError(std::string("field is not a string: ") + name);
  }
  return v.get<std::string>();
}

std::string OptionalString(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw FormatError(std::string("field is not a string: ") + name);
  }
  return it->get<std::string>();
}

size_t OffsetField(const Json& j, const char* name) {
  const Json& v = Field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
    throw FormatError(std::string("field is not an offset: ") + name);
  }
  return v.get<size_t>();
}

std::optional<double> OptionalScore(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw FormatError(std::string("field is not a number: ") + name);
  }
  return it->get<double>();
}

EntityType TypeField(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return EntityType::kUnknown;
  if (!it->is_string()) throw FormatError("entity type is not a string");
  auto t = ParseEntityType(it->get<std::string>());
  if (!t) throw FormatError("entity type outside tagset: " + it->dump());
  return *t;
}

}  // namespace

Json ToJson(const Mention& m) {
  Json j = {{"start", m.start},
            {"end", m.end},
            {"surface", m.surface},
            {"kind", MentionKindName(m.kind)}};
  if (m.kind == MentionKind::kEntity) {
    j["entity_id"] = m.entity_id;
  } else {
    j["literal"] = m.literal;
  }
  return j;
}

Json ToJson(const Document& d) {
  Json mentions = Json::array();
  for (const Mention& m : d.mentions) mentions.push_back(ToJson(m));
  return {{"doc_id", d.doc_id}, {"page_id", d.page_id},
          {"lang", d.lang},     {"title", d.title},
          {"text", d.text},     {"mentions", std::move(mentions)}};
}

Json ToJson(const Triplet& t) {
  Json j = {{"triplet_id", t.triplet_id},
            {"doc_id", t.doc_id},
            {"lang", t.lang},
            {"page_id", t.page_id},
            {"subj", t.subj},
            {"obj", t.obj},
            {"pid", t.pid},
            {"status", TripletStatusName(t.status)}};
  if (t.entail_score) j["entail_score"] = *t.entail_score;
  if (t.critic_score) j["critic_score"] = *t.critic_score;
  return j;
}

Json ToJson(const Judgment& j) {
  return {{"triplet_id", j.triplet_id},
          {"annotator_id", j.annotator_id},
          {"verdict", j.verdict},
          {"submitted_at", j.submitted_at}};
}

Json ToJson(const EntityRef& e) {
  Json j = {{"surface", e.surface},
            {"start", e.start},
            {"end", e.end},
            {"type", EntityTypeName(e.type)}};
  if (!e.entity_id.empty()) j["entity_id"] = e.entity_id;
  return j;
}

Json ToJson(const RelationInstance& r) {
  Json j = {{"subject", ToJson(r.subject)},
            {"object", ToJson(r.object)},
            {"relation", r.relation}};
  if (!r.pid.empty()) j["pid"] = r.pid;
  return j;
}

Json ToJson(const DatasetRecord& r) {
  Json rels = Json::array();
  for (const RelationInstance& rel : r.relations) rels.push_back(ToJson(rel));
  return {{"doc_id", r.doc_id}, {"page_id", r.page_id},
          {"lang", r.lang},     {"title", r.title},
          {"text", r.text},     {"relations", std::move(rels)}};
}

Mention MentionFromJson(const Json& j) {
  Mention m;
  m.start = OffsetField(j, "start");
  m.end = OffsetField(j, "end");
  m.surface = StringField(j, "surface");
  auto kind = ParseMentionKind(StringField(j, "kind"));
  if (!kind) throw FormatError("unknown mention kind");
  m.kind = *kind;
  m.entity_id = OptionalString(j, "entity_id");
  m.literal = OptionalString(j, "literal");
  if (m.kind == MentionKind::kEntity ? m.entity_id.empty()
                                     : m.literal.empty()) {
    throw FormatError("mention lacks its value");
  }
  return m;
}

Document DocumentFromJson(const Json& j) {
  Document d;
  d.doc_id = StringField(j, "doc_id");
  d.page_id = StringField(j, "page_id");
  d.lang = StringField(j, "lang");
  d.title = OptionalString(j, "title");
  d.text = StringField(j, "text");
  auto it = j.find("mentions");
  if (it != j.end()) {
    if (!it->is_array()) throw FormatError("mentions is not an array");
    for (const Json& m : *it) d.mentions.push_back(MentionFromJson(m));
  }
  return d;
}

Triplet TripletFromJson(const Json& j) {
  Triplet t;
  t.triplet_id = StringField(j, "triplet_id");
  t.doc_id = StringField(j, "doc_id");
  t.lang = OptionalString(j, "lang");
  t.page_id = OptionalString(j, "page_id");
  const Json& subj = Field(j, "subj");
  const Json& obj = Field(j, "obj");
  if (!subj.is_number_integer() || !obj.is_number_integer()) {
    throw FormatError("subj/obj must be mention indices");
  }
  t.subj = subj.get<int>();
  t.obj = obj.get<int>();
  t.pid = StringField(j, "pid");
  t.entail_score = OptionalScore(j, "entail_score");
  t.critic_score = OptionalScore(j, "critic_score");
  auto status = ParseTripletStatus(StringField(j, "status"));
  if (!status) throw FormatError("unknown triplet status");
  t.status = *status;
  return t;
}

Judgment JudgmentFromJson(const Json& j) {
  Judgment out;
  out.triplet_id = StringField(j, "triplet_id");
  out.annotator_id = StringField(j, "annotator_id");
  const Json& v = Field(j, "verdict");
  if (!v.is_boolean()) throw FormatError("verdict is not a boolean");
  out.verdict = v.get<bool>();
  auto it = j.find("submitted_at");
  if (it != j.end() && it->is_number_integer()) {
    out.submitted_at = it->get<int64_t>();
  }
  return out;
}

EntityRef EntityRefFromJson(const Json& j) {
  EntityRef e;
  e.surface = StringField(j, "surface");
  auto s = j.find("start");
  auto en = j.find("end");
  if (s != j.end() && en != j.end()) {
    e.start = OffsetField(j, "start");
    e.end = OffsetField(j, "end");
  }
  e.type = TypeField(j, "type");
  e.entity_id = OptionalString(j, "entity_id");
  return e;
}

RelationInstance RelationInstanceFromJson(const Json& j) {
  RelationInstance r;
  r.subject = EntityRefFromJson(Field(j, "subject"));
  r.object = EntityRefFromJson(Field(j, "object"));
  r.relation = StringField(j, "relation");
  r.pid = OptionalString(j, "pid");
  return r;
}

DatasetRecord DatasetRecordFromJson(const Json& j) {
  DatasetRecord r;
  r.doc_id = StringField(j, "doc_id");
  r.page_id = OptionalString(j, "page_id");
  r.lang = OptionalString(j, "lang");
  r.title = OptionalString(j, "title");
  r.text = OptionalString(j, "text");
  auto it = j.find("relations");
  if (it != j.end()) {
    if (!it->is_array()) throw FormatError("relations is not an array");
    for (const Json& rel : *it) {
      r.relations.push_back(RelationInstanceFromJson(rel));
    }
  }
  return r;
}

void ForEachLine(const std::string& path,
                 const std::function<void(const std::string&, size_t)>& fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    fn(line, lineno);
  }
}

void WriteFile(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> ReadTsv(const std::string& path,
                                              size_t min_columns) {
  std::vector<std::vector<std::string>> rows;
  ForEachLine(path, [&](const std::string& line, size_t lineno) {
    if (line[0] == '#') return;
    auto fields = Split(line, '\t');
    if (fields.size() < min_columns) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(min_columns) + " columns");
    }
    rows.push_back(std::move(fields));
  });
  return rows;
}

std::vector<std::vector<std::string>> ParseTsv(std::string_view text,
                                               size_t min_columns) {
  std::vector<std::vector<std::string>> rows;
  for (const std::string& line : Split(text, '\n')) {
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    if (fields.size() < min_columns) {
      throw FormatError("expected " + std::to_string(min_columns) +
                        " columns: " + line);
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace tripletkit
