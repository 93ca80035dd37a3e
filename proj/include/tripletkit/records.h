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

#ifndef TRIPLETKIT_RECORDS_H_
#define TRIPLETKIT_RECORDS_H_

// Line-record (JSON Lines) and TSV serialization for the pipeline's file
// formats. Field names are documented in docs/formats.md.

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tripletkit/types.h"

namespace tripletkit {

using Json = nlohmann::json;

Json ToJson(const Mention& m);
Json ToJson(const Document& d);
Json ToJson(const Triplet& t);
Json ToJson(const Judgment& j);
Json ToJson(const EntityRef& e);
Json ToJson(const RelationInstance& r);
Json ToJson(const DatasetRecord& r);

// The From* functions throw FormatError on schema violations.
Mention MentionFromJson(const Json& j);
Document DocumentFromJson(const Json& j);
Triplet TripletFromJson(const Json& j);
Judgment JudgmentFromJson(const Json& j);
EntityRef EntityRefFromJson(const Json& j);
RelationInstance RelationInstanceFromJson(const Json& j);
DatasetRecord DatasetRecordFromJson(const Json& j);

// Calls |fn| for every non-blank line of |path| with its 1-based number.
void ForEachLine(const std::string& path,
                 const std::function<void(const std::string&, size_t)>& fn);

// Reads a JSON Lines file, converting every record with |convert|.
template <typename T>
std::vector<T> ReadJsonl(const std::string& path, T (*convert)(const Json&)) {
  std::vector<T> out;
  ForEachLine(path, [&](const std::string& line, size_t lineno) {
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    try {
      out.push_back(convert(j));
    } catch (const FormatError& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  });
  return out;
}

// Serializes |items| one JSON object per line.
template <typename T>
std::string ToJsonl(const std::vector<T>& items) {
  std::string out;
  for (const T& item : items) {
    out += ToJson(item).dump();
    out += '\n';
  }
  return out;
}

void WriteFile(const std::string& path, const std::string& content);
std::string ReadFile(const std::string& path);

// Reads a tab-separated file into rows; '#' lines and blank lines are
// skipped. Rows with fewer than |min_columns| fields raise FormatError.
std::vector<std::vector<std::string>> ReadTsv(const std::string& path,
                                              size_t min_columns);
// Same rules over in-memory text.
std::vector<std::vector<std::string>> ParseTsv(std::string_view text,
                                               size_t min_columns);

}  // namespace tripletkit

#endif  // TRIPLETKIT_RECORDS_H_
