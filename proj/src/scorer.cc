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

#include "tripletkit/scorer.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include "httplib.h"
#include "tripletkit/records.h"

namespace tripletkit {

std::unique_ptr<MockScorer> MockScorer::Load(const std::string& path,
                                             double default_score) {
  auto scorer = std::make_unique<MockScorer>(default_score);
  for (const auto& row : ReadTsv(path, 3)) {
    if (row[2] == "error") {
      scorer->SetFailure(row[0], row[1]);
    } else {
      scorer->SetScore(row[0], row[1], std::stod(row[2]));
    }
  }
  return scorer;
}

void MockScorer::SetScore(const std::string& id, const std::string& hypothesis,
                          double score) {
  rules_[{id, hypothesis}] = score;
}

void MockScorer::SetFailure(const std::string& id,
                            const std::string& hypothesis) {
  rules_[{id, hypothesis}] = std::numeric_limits<double>::quiet_NaN();
}

const double* MockScorer::Find(const ScoringPair& p) const {
  auto it = rules_.find({p.id, p.hypothesis});
  if (it == rules_.end()) it = rules_.find({"*", p.hypothesis});
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<double> MockScorer::Score(std::span<const ScoringPair> pairs) {
  ++calls_;
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const ScoringPair& p : pairs) {
    const double* rule = Find(p);
    if (rule != nullptr && std::isnan(*rule)) {
      throw ScorerError("mock failure for '" + p.hypothesis + "'");
    }
    scores.push_back(rule ? *rule : default_score_);
  }
  return scores;
}

BatchScores ScoreBatched(std::span<const ScoringPair> pairs,
                         PairScorer& scorer, size_t batch_size) {
  BatchScores out;
  out.scores.resize(pairs.size());
  out.errors.resize(pairs.size());
  if (batch_size == 0) batch_size = 1;
  for (size_t b = 0; b < pairs.size(); b += batch_size) {
    size_t n = std::min(batch_size, pairs.size() - b);
    try {
      auto scores = scorer.Score(pairs.subspan(b, n));
      if (scores.size() != n) throw ScorerError("score count mismatch");
      for (size_t i = 0; i < n; ++i) out.scores[b + i] = scores[i];
      continue;
    } catch (const ScorerError&) {
      // retried per pair below
    }
    for (size_t i = b; i < b + n; ++i) {
      try {
        auto one = scorer.Score(pairs.subspan(i, 1));
        if (one.size() != 1) throw ScorerError("score count mismatch");
        out.scores[i] = one[0];
      } catch (const ScorerError& e) {
        out.errors[i] = e.what();
      }
    }
  }
  return out;
}

nlohmann::json EncodeScoringRequest(std::span<const ScoringPair> pairs) {
  Json list = Json::array();
  for (const ScoringPair& p : pairs) {
    list.push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});
  }
  return {{"pairs", std::move(list)}};
}

std::vector<double> DecodeScoringResponse(const std::string& body,
                                          size_t expected) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("scores") ||
      !j["scores"].is_array()) {
    throw ScorerError("malformed scorer response");
  }
  const Json& scores = j["scores"];
  if (scores.size() != expected) {
    throw ScorerError("scorer returned " + std::to_string(scores.size()) +
                      " scores for " + std::to_string(expected) + " pairs");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const Json& s : scores) {
    if (!s.is_number()) throw ScorerError("non-numeric score");
    double v = s.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw ScorerError("score outside [0,1]");
    out.push_back(v);
  }
  return out;
}

HttpScorer::HttpScorer(HttpScorerOptions options)
    : options_(std::move(options)) {
  if (options_.batch_size == 0) options_.batch_size = 1;
}

std::vector<double> HttpScorer::Score(std::span<const ScoringPair> pairs) {
  httplib::Client client(options_.url);
  auto secs = static_cast<time_t>(options_.timeout_seconds);
  auto usecs = static_cast<time_t>(
      (options_.timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  std::vector<double> out;
  out.reserve(pairs.size());
  for (size_t b = 0; b < pairs.size(); b += options_.batch_size) {
    auto batch = pairs.subspan(b, std::min(options_.batch_size, pairs.size() - b));
    auto res = client.Post(options_.path, EncodeScoringRequest(batch).dump(),
                           "application/json");
    if (!res) {
      throw ScorerError("scorer request failed: " +
                        httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw ScorerError("scorer returned HTTP " + std::to_string(res->status));
    }
    auto scores = DecodeScoringResponse(res->body, batch.size());
    out.insert(out.end(), scores.begin(), scores.end());
  }
  return out;
}

std::unique_ptr<PairScorer> MakeScorer(const nlohmann::json& config,
                                       const std::string& base_dir) {
  std::string type = config.value("type", "mock");
  if (type == "mock") {
    double def = config.value("default", 1.0);
    if (config.contains("rules")) {
      std::filesystem::path p(config["rules"].get<std::string>());
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      return MockScorer::Load(p.string(), def);
    }
    return std::make_unique<MockScorer>(def);
  }
  if (type == "http") {
    HttpScorerOptions opts;
    opts.url = config.value("url", opts.url);
    opts.path = config.value("path", opts.path);
    opts.timeout_seconds = config.value("timeout", opts.timeout_seconds);
    opts.batch_size = config.value("batch_size", opts.batch_size);
    return std::make_unique<HttpScorer>(opts);
  }
  throw std::invalid_argument("unknown scorer type: " + type);
}

}  // namespace tripletkit
