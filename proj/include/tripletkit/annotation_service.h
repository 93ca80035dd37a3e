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

#ifndef TRIPLETKIT_ANNOTATION_SERVICE_H_
#define TRIPLETKIT_ANNOTATION_SERVICE_H_

// Self-hosted annotation service. HITs are leased to qualified annotators;
// judgments go to an append-only log from which aggregation is a pure fold.
//
// HTTP API (JSON bodies):
//   GET  /hits/next?lang=xx&annotator=id  200 Hit | 204 none left | 403
//   POST /judgments                       one judgment object or JSON lines
//   GET  /progress?lang=xx
//   GET  /report?lang=xx                  AgreementReport
//   GET  /relations?lang=xx               localized relation descriptions

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tripletkit/annotation.h"

namespace httplib {
class Server;
}

namespace tripletkit {

// Append-only judgment log (JSON lines). Existing content is replayed on
// open. A second judgment for the same (triplet, annotator) is ignored.
class JudgmentLog {
 public:
  // Empty path keeps the log in memory only.
  explicit JudgmentLog(std::string path = "");

  // Returns false for a duplicate (nothing written).
  bool Append(const Judgment& j);

  std::vector<Judgment> Snapshot() const;
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::string path_;
  std::vector<Judgment> judgments_;
  std::set<std::pair<std::string, std::string>> keys_;
};

// Relation names and descriptions per language; rows of
// pid \t lang \t name \t description.
class RelationDescriptions {
 public:
  static RelationDescriptions Load(const std::string& path);
  static RelationDescriptions Default();

  // Descriptions for |lang|, falling back to English per relation.
  nlohmann::json For(const std::string& lang) const;

 private:
  // pid -> lang -> (name, description)
  std::map<std::string, std::map<std::string, std::pair<std::string, std::string>>>
      rows_;
};

struct ServiceOptions {
  AggregateOptions aggregate;
  int64_t lease_seconds = 1800;
};

class AnnotationService {
 public:
  using Clock = std::function<int64_t()>;

  // |annotators| maps annotator id to its qualified flag; unknown or
  // unqualified annotators receive no HITs and cannot submit.
  AnnotationService(std::vector<Hit> hits, JudgmentLog* log,
                    std::map<std::string, bool> annotators,
                    RelationDescriptions descriptions, ServiceOptions options,
                    Clock clock = nullptr);

  enum class NextStatus { kOk, kNoneAvailable, kNotQualified };
  struct NextResult {
    NextStatus status;
    std::optional<Hit> hit;
  };
  NextResult NextHit(const std::string& lang, const std::string& annotator);

  enum class SubmitStatus { kAccepted, kDuplicate, kUnknownTriplet, kNotQualified };
  SubmitStatus Submit(Judgment j);

  nlohmann::json Progress(const std::string& lang) const;
  AgreementReport Report(const std::string& lang) const;
  nlohmann::json Relations(const std::string& lang) const {
    return descriptions_.For(lang);
  }

  // Registers the HTTP routes.
  void Bind(httplib::Server* server);

 private:
  bool Qualified(const std::string& annotator) const;
  std::vector<Judgment> JudgmentsFor(const std::string& lang) const;

  std::vector<Hit> hits_;
  JudgmentLog* log_;
  std::map<std::string, bool> annotators_;
  RelationDescriptions descriptions_;
  ServiceOptions options_;
  Clock clock_;

  std::map<std::string, std::string> lang_of_;     // triplet -> lang
  std::map<std::string, size_t> hit_of_;           // triplet -> hit index

  mutable std::mutex mu_;
  // hit index -> annotator -> lease expiry
  std::map<size_t, std::map<std::string, int64_t>> leases_;
};

}  // namespace tripletkit

#endif  // TRIPLETKIT_ANNOTATION_SERVICE_H_
