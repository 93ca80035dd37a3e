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

#ifndef TRIPLETKIT_SCORER_H_
#define TRIPLETKIT_SCORER_H_

// Pluggable (premise, hypothesis) scorers: entailment for the NLI filter and
// the triplet critic. Neural models live behind an HTTP endpoint; MockScorer
// is a deterministic rule table for tests and desk runs.
//
// Wire protocol (one endpoint per scorer):
//   POST <path>  {"pairs": [{"premise": "...", "hypothesis": "..."}, ...]}
//   200          {"scores": [0.93, ...]}   one probability per pair, in order

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace tripletkit {

struct ScoringPair {
  std::string id;  // caller key (doc id); not sent over the wire
  std::string premise;
  std::string hypothesis;
};

class ScorerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PairScorer {
 public:
  virtual ~PairScorer() = default;

  // Returns one probability in [0,1] per pair. Throws ScorerError.
  virtual std::vector<double> Score(std::span<const ScoringPair> pairs) = 0;
};

class MockScorer : public PairScorer {
 public:
  explicit MockScorer(double default_score = 1.0)
      : default_score_(default_score) {}

  // TSV rows: id \t hypothesis \t score, where id "*" matches any document
  // and score "error" makes scoring that pair fail.
  static std::unique_ptr<MockScorer> Load(const std::string& path,
                                          double default_score);

  void SetScore(const std::string& id, const std::string& hypothesis,
                double score);
  void SetFailure(const std::string& id, const std::string& hypothesis);

  std::vector<double> Score(std::span<const ScoringPair> pairs) override;

  size_t calls() const { return calls_; }

 private:
  // NaN marks a failing rule.
  const double* Find(const ScoringPair& p) const;

  double default_score_;
  std::map<std::pair<std::string, std::string>, double> rules_;
  size_t calls_ = 0;
};

struct HttpScorerOptions {
  std::string url = "http://127.0.0.1:8090";  // scheme://host:port
  std::string path = "/entailment";
  double timeout_seconds = 30.0;
  size_t batch_size = 32;
};

class HttpScorer : public PairScorer {
 public:
  explicit HttpScorer(HttpScorerOptions options);

  std::vector<double> Score(std::span<const ScoringPair> pairs) override;

  const HttpScorerOptions& options() const { return options_; }

 private:
  HttpScorerOptions options_;
};

// Scores |pairs| in batches. A failing batch is retried one pair at a
// time; pairs that still fail get nullopt and a message in |errors|.
struct BatchScores {
  std::vector<std::optional<double>> scores;
  std::vector<std::string> errors;  // parallel to scores; empty on success
};
BatchScores ScoreBatched(std::span<const ScoringPair> pairs,
                         PairScorer& scorer, size_t batch_size);

nlohmann::json EncodeScoringRequest(std::span<const ScoringPair> pairs);
// Throws ScorerError on malformed bodies, length mismatch or
// out-of-range probabilities.
std::vector<double> DecodeScoringResponse(const std::string& body,
                                          size_t expected);

// Builds a scorer from a config object:
//   {"type": "mock", "default": 1.0, "rules": "path.tsv"}
//   {"type": "http", "url": "...", "path": "...", "timeout": 30, "batch_size": 32}
// Relative rule paths are resolved against |base_dir|.
std::unique_ptr<PairScorer> MakeScorer(const nlohmann::json& config,
                                       const std::string& base_dir);

}  // namespace tripletkit

#endif  // TRIPLETKIT_SCORER_H_
