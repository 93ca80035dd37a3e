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

#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "support/test_support.h"
#include "tripletkit/records.h"

using namespace tripletkit;
using tripletkit::testing::TempDir;

namespace {

std::vector<ScoringPair> Pairs(int n) {
  std::vector<ScoringPair> v;
  for (int i = 0; i < n; ++i) {
    v.push_back({"d" + std::to_string(i), "premise", "h" + std::to_string(i)});
  }
  return v;
}

// Scores a pair by the length of its hypothesis; "boom" fails the batch.
class LengthServer {
 public:
  LengthServer() {
    server_.Post("/entailment", [this](const httplib::Request& req,
                                       httplib::Response& res) {
      ++requests_;
      nlohmann::json body = nlohmann::json::parse(req.body);
      nlohmann::json scores = nlohmann::json::array();
      for (const auto& p : body["pairs"]) {
        std::string h = p["hypothesis"];
        if (h == "boom") {
          res.status = 500;
          return;
        }
        scores.push_back(static_cast<double>(h.size()) / 10.0);
      }
      res.set_content(nlohmann::json{{"scores", scores}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LengthServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

}  // namespace

TEST_CASE("mock rules match by document then wildcard") {
  MockScorer m(0.9);
  m.SetScore("*", "h1", 0.2);
  m.SetScore("d1", "h1", 0.05);
  m.SetScore("*", "h2", 0.3);
  auto scores = m.Score(Pairs(3));
  CHECK(scores == std::vector<double>{0.9, 0.05, 0.3});
  m.SetFailure("d0", "h0");
  CHECK_THROWS_AS(m.Score(Pairs(1)), ScorerError);
}

TEST_CASE("mock rules load from TSV") {
  TempDir dir;
  WriteFile(dir.File("r.tsv"), "*\th0\t0.5\nd1\th1\terror\n");
  auto m = MockScorer::Load(dir.File("r.tsv"), 1.0);
  CHECK(m->Score(Pairs(1))[0] == 0.5);
  CHECK_THROWS_AS(m->Score(Pairs(2)), ScorerError);
}

TEST_CASE("a failing batch is retried pair by pair") {
  MockScorer m(0.7);
  m.SetFailure("d3", "h3");
  auto pairs = Pairs(5);
  BatchScores out = ScoreBatched(pairs, m, 2);
  // batches {0,1} {2,3} {4}; the middle one fails then retries twice
  CHECK(m.calls() == 5);
  CHECK(out.scores[2] == 0.7);
  CHECK_FALSE(out.scores[3]);
  CHECK_FALSE(out.errors[3].empty());
  CHECK(out.errors[4].empty());
  CHECK(out.scores[4] == 0.7);
}

TEST_CASE("response decoding validates shape and range") {
  CHECK(DecodeScoringResponse(R"({"scores":[0,1,0.5]})", 3) ==
        std::vector<double>{0, 1, 0.5});
  CHECK_THROWS_AS(DecodeScoringResponse(R"({"scores":[0.1]})", 2), ScorerError);
  CHECK_THROWS_AS(DecodeScoringResponse(R"({"scores":[1.5]})", 1), ScorerError);
  CHECK_THROWS_AS(DecodeScoringResponse(R"({"scores":["a"]})", 1), ScorerError);
  CHECK_THROWS_AS(DecodeScoringResponse("[", 1), ScorerError);
  auto req = EncodeScoringRequest(Pairs(2));
  CHECK(req["pairs"].size() == 2);
  CHECK_FALSE(req["pairs"][0].contains("id"));
}

TEST_CASE("HTTP scorer batches requests") {
  LengthServer server;
  HttpScorerOptions opts;
  opts.url = server.url();
  opts.batch_size = 2;
  opts.timeout_seconds = 5;
  HttpScorer scorer(opts);
  std::vector<ScoringPair> pairs = {
      {"a", "p", "x"}, {"b", "p", "xyz"}, {"c", "p", "xyzuvw"}};
  CHECK(scorer.Score(pairs) == std::vector<double>{0.1, 0.3, 0.6});
  CHECK(server.requests() == 2);

  pairs[1].hypothesis = "boom";
  CHECK_THROWS_AS(scorer.Score(pairs), ScorerError);
  BatchScores out = ScoreBatched(pairs, scorer, 3);
  CHECK(out.scores[0] == 0.1);
  CHECK_FALSE(out.scores[1]);
  CHECK(out.scores[2] == 0.6);
}

TEST_CASE("unreachable HTTP scorer raises ScorerError") {
  HttpScorerOptions opts;
  opts.url = "http://127.0.0.1:1";
  opts.timeout_seconds = 1;
  HttpScorer scorer(opts);
  CHECK_THROWS_AS(scorer.Score(Pairs(1)), ScorerError);
}

TEST_CASE("MakeScorer builds from config") {
  auto mock = MakeScorer({{"type", "mock"}, {"default", 0.25}}, ".");
  CHECK(mock->Score(Pairs(1))[0] == 0.25);
  CHECK(dynamic_cast<HttpScorer*>(
            MakeScorer({{"type", "http"}, {"url", "http://h:1"}}, ".").get()) !=
        nullptr);
  CHECK_THROWS_AS(MakeScorer({{"type", "gpu"}}, "."), std::invalid_argument);
}
