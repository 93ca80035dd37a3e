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

#include "tripletkit/annotation_service.h"

#include <chrono>
#include <fstream>

#include "embedded_data.h"
#include "httplib.h"
#include "tripletkit/records.h"
#include "tripletkit/text.h"

namespace tripletkit {

namespace {

int64_t WallClock() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void SendJson(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

}  // namespace

// JudgmentLog

JudgmentLog::JudgmentLog(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream probe(path_);
  if (!probe) return;
  ForEachLine(path_, [&](const std::string& line, size_t lineno) {
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      // A torn final write from a crash; everything before it is intact.
      return;
    }
    Judgment jd = JudgmentFromJson(j);
    if (keys_.emplace(jd.triplet_id, jd.annotator_id).second) {
      judgments_.push_back(std::move(jd));
    }
    (void)lineno;
  });
}

bool JudgmentLog::Append(const Judgment& j) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!keys_.emplace(j.triplet_id, j.annotator_id).second) return false;
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path_);
    out << ToJson(j).dump() << '\n';
    out.flush();
  }
  judgments_.push_back(j);
  return true;
}

std::vector<Judgment> JudgmentLog::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return judgments_;
}

size_t JudgmentLog::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return judgments_.size();
}

// RelationDescriptions

RelationDescriptions RelationDescriptions::Load(const std::string& path) {
  RelationDescriptions d;
  for (auto& row : ReadTsv(path, 4)) {
    d.rows_[row[0]][row[1]] = {row[2], row[3]};
  }
  return d;
}

RelationDescriptions RelationDescriptions::Default() {
  RelationDescriptions d;
  for (auto& row : ParseTsv(EmbeddedData("relation_descriptions.tsv"), 4)) {
    d.rows_[row[0]][row[1]] = {row[2], row[3]};
  }
  return d;
}

Json RelationDescriptions::For(const std::string& lang) const {
  Json out = Json::object();
  for (const auto& [pid, by_lang] : rows_) {
    auto it = by_lang.find(lang);
    if (it == by_lang.end()) it = by_lang.find("en");
    if (it == by_lang.end()) continue;
    out[pid] = {{"name", it->second.first}, {"description", it->second.second}};
  }
  return out;
}

// AnnotationService

AnnotationService::AnnotationService(std::vector<Hit> hits, JudgmentLog* log,
                                     std::map<std::string, bool> annotators,
                                     RelationDescriptions descriptions,
                                     ServiceOptions options, Clock clock)
    : hits_(std::move(hits)),
      log_(log),
      annotators_(std::move(annotators)),
      descriptions_(std::move(descriptions)),
      options_(options),
      clock_(clock ? std::move(clock) : Clock(WallClock)) {
  for (size_t h = 0; h < hits_.size(); ++h) {
    for (const HitItem& item : hits_[h].items) {
      lang_of_[item.triplet_id] = hits_[h].lang;
      hit_of_[item.triplet_id] = h;
    }
  }
}

bool AnnotationService::Qualified(const std::string& annotator) const {
  auto it = annotators_.find(annotator);
  return it != annotators_.end() && it->second;
}

AnnotationService::NextResult AnnotationService::NextHit(
    const std::string& lang, const std::string& annotator) {
  if (!Qualified(annotator)) return {NextStatus::kNotQualified, std::nullopt};
  auto judgments = log_->Snapshot();
  // Annotators that already worked on each HIT.
  std::map<size_t, std::set<std::string>> workers;
  for (const Judgment& j : judgments) {
    auto it = hit_of_.find(j.triplet_id);
    if (it != hit_of_.end()) workers[it->second].insert(j.annotator_id);
  }
  const int64_t now = clock_();
  std::lock_guard<std::mutex> lock(mu_);
  for (size_t h = 0; h < hits_.size(); ++h) {
    if (hits_[h].lang != lang) continue;
    auto& leases = leases_[h];
    for (auto it = leases.begin(); it != leases.end();) {
      bool done = workers[h].count(it->first) > 0;
      it = (it->second <= now || done) ? leases.erase(it) : std::next(it);
    }
    if (workers[h].count(annotator)) continue;  // never the same triplet twice
    if (leases.count(annotator)) return {NextStatus::kOk, hits_[h]};
    if (workers[h].size() + leases.size() >= options_.aggregate.required) {
      continue;
    }
    leases[annotator] = now + options_.lease_seconds;
    return {NextStatus::kOk, hits_[h]};
  }
  return {NextStatus::kNoneAvailable, std::nullopt};
}

AnnotationService::SubmitStatus AnnotationService::Submit(Judgment j) {
  if (!Qualified(j.annotator_id)) return SubmitStatus::kNotQualified;
  if (!hit_of_.count(j.triplet_id)) return SubmitStatus::kUnknownTriplet;
  if (j.submitted_at == 0) j.submitted_at = clock_();
  return log_->Append(j) ? SubmitStatus::kAccepted : SubmitStatus::kDuplicate;
}

std::vector<Judgment> AnnotationService::JudgmentsFor(
    const std::string& lang) const {
  std::vector<Judgment> out;
  for (Judgment& j : log_->Snapshot()) {
    auto it = lang_of_.find(j.triplet_id);
    if (it != lang_of_.end() && it->second == lang) out.push_back(std::move(j));
  }
  return out;
}

Json AnnotationService::Progress(const std::string& lang) const {
  auto judgments = JudgmentsFor(lang);
  auto aggregated = Aggregate(judgments, options_.aggregate);
  size_t hits = 0, triplets = 0;
  for (const Hit& h : hits_) {
    if (h.lang != lang) continue;
    ++hits;
    triplets += h.items.size();
  }
  size_t done = 0;
  for (const auto& [id, v] : aggregated) {
    if (v != Verdict::kPending) ++done;
  }
  return {{"lang", lang},
          {"hits", hits},
          {"triplets", triplets},
          {"judgments", judgments.size()},
          {"aggregated", done},
          {"pending", triplets - done}};
}

AgreementReport AnnotationService::Report(const std::string& lang) const {
  return ComputeAgreement(JudgmentsFor(lang), lang, lang_of_, options_.aggregate);
}

void AnnotationService::Bind(httplib::Server* server) {
  server->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server->Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server->Get("/hits/next", [this](const httplib::Request& req,
                                   httplib::Response& res) {
    if (!req.has_param("lang") || !req.has_param("annotator")) {
      SendJson(res, 400, {{"error", "lang and annotator are required"}});
      return;
    }
    auto next = NextHit(req.get_param_value("lang"),
                        req.get_param_value("annotator"));
    switch (next.status) {
      case NextStatus::kOk:
        SendJson(res, 200, ToJson(*next.hit));
        break;
      case NextStatus::kNoneAvailable:
        res.status = 204;
        break;
      case NextStatus::kNotQualified:
        SendJson(res, 403, {{"error", "annotator not qualified"}});
        break;
    }
  });

  server->Post("/judgments", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    std::vector<Json> records;
    Json whole = Json::parse(req.body, nullptr, false);
    if (!whole.is_discarded()) {
      if (whole.is_array()) {
        records.assign(whole.begin(), whole.end());
      } else {
        records.push_back(std::move(whole));
      }
    } else {
      for (const std::string& line : Split(req.body, '\n')) {
        if (Trim(line).empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded()) {
          SendJson(res, 400, {{"error", "malformed judgment record"}});
          return;
        }
        records.push_back(std::move(j));
      }
    }
    size_t accepted = 0, duplicates = 0;
    Json rejected = Json::array();
    for (const Json& r : records) {
      Judgment j;
      try {
        j = JudgmentFromJson(r);
      } catch (const FormatError& e) {
        rejected.push_back({{"record", r}, {"error", e.what()}});
        continue;
      }
      switch (Submit(j)) {
        case SubmitStatus::kAccepted: ++accepted; break;
        case SubmitStatus::kDuplicate: ++duplicates; break;
        case SubmitStatus::kUnknownTriplet:
          rejected.push_back({{"triplet_id", j.triplet_id}, {"error", "unknown triplet"}});
          break;
        case SubmitStatus::kNotQualified:
          rejected.push_back({{"triplet_id", j.triplet_id}, {"error", "annotator not qualified"}});
          break;
      }
    }
    SendJson(res, 200, {{"accepted", accepted},
                        {"duplicates", duplicates},
                        {"rejected", std::move(rejected)}});
  });

  server->Get("/progress", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    if (!req.has_param("lang")) {
      SendJson(res, 400, {{"error", "lang is required"}});
      return;
    }
    SendJson(res, 200, Progress(req.get_param_value("lang")));
  });

  server->Get("/report", [this](const httplib::Request& req,
                                httplib::Response& res) {
    if (!req.has_param("lang")) {
      SendJson(res, 400, {{"error", "lang is required"}});
      return;
    }
    SendJson(res, 200, ToJson(Report(req.get_param_value("lang"))));
  });

  server->Get("/relations", [this](const httplib::Request& req,
                                   httplib::Response& res) {
    std::string lang = req.has_param("lang") ? req.get_param_value("lang") : "en";
    SendJson(res, 200, Relations(lang));
  });
}

}  // namespace tripletkit
