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

#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "support/test_support.h"
#include "tripletkit/records.h"

using namespace tripletkit;
using tripletkit::testing::TempDir;

namespace {

std::vector<Hit> Hits() {
  std::vector<Hit> hits;
  for (const char* lang : {"en", "es"}) {
    for (int h = 0; h < 2; ++h) {
      Hit hit;
      hit.hit_id = std::string(lang) + "-" + std::to_string(h);
      hit.lang = lang;
      for (int i = 0; i < 2; ++i) {
        HitItem item;
        item.triplet_id = hit.hit_id + "/" + std::to_string(i);
        item.text = "A B";
        item.subj_end = 1;
        item.obj_start = 2;
        item.obj_end = 3;
        item.pid = "P17";
        item.relation = "country";
        hit.items.push_back(item);
      }
      hits.push_back(hit);
    }
  }
  return hits;
}

std::map<std::string, bool> Annotators() {
  return {{"a", true}, {"b", true}, {"c", true}, {"d", true}, {"x", false}};
}

struct Fixture {
  int64_t now = 1000;
  JudgmentLog log;
  AnnotationService service{Hits(), &log, Annotators(),
                            RelationDescriptions::Default(), ServiceOptions{},
                            [this] { return now; }};

  void JudgeHit(const Hit& hit, const std::string& annotator, bool verdict) {
    for (const HitItem& item : hit.items) {
      CHECK(service.Submit({item.triplet_id, annotator, verdict, 0}) ==
            AnnotationService::SubmitStatus::kAccepted);
    }
  }
};

}  // namespace

TEST_CASE("judgment log replays, skips torn lines and rejects duplicates") {
  TempDir dir;
  std::string path = dir.File("log.jsonl");
  {
    JudgmentLog log(path);
    CHECK(log.Append({"t1", "a", true, 5}));
    CHECK_FALSE(log.Append({"t1", "a", false, 6}));
    CHECK(log.Append({"t1", "b", false, 7}));
  }
  std::string content = ReadFile(path);
  WriteFile(path, content + "{\"triplet_id\":\"t2\",\"annot");
  JudgmentLog again(path);
  CHECK(again.size() == 2);
  CHECK(again.Snapshot()[1] == Judgment{"t1", "b", false, 7});
  CHECK_FALSE(again.Append({"t1", "b", true, 8}));
}

TEST_CASE("HITs are leased to at most the required number of annotators") {
  Fixture f;
  auto r = f.service.NextHit("en", "x");
  CHECK(r.status == AnnotationService::NextStatus::kNotQualified);
  CHECK(f.service.NextHit("en", "nobody").status ==
        AnnotationService::NextStatus::kNotQualified);

  Hit first = *f.service.NextHit("en", "a").hit;
  CHECK(first.hit_id == "en-0");
  // A repeated request returns the same lease.
  CHECK(f.service.NextHit("en", "a").hit->hit_id == "en-0");
  CHECK(f.service.NextHit("en", "b").hit->hit_id == "en-0");
  CHECK(f.service.NextHit("en", "c").hit->hit_id == "en-0");
  CHECK(f.service.NextHit("en", "d").hit->hit_id == "en-1");

  f.JudgeHit(first, "a", true);
  // An annotator never sees a HIT it already judged.
  CHECK(f.service.NextHit("en", "a").hit->hit_id == "en-1");

  // Expired leases free their slot.
  f.now += ServiceOptions{}.lease_seconds;
  Hit freed = *f.service.NextHit("en", "d").hit;
  CHECK(freed.hit_id == "en-0");
  CHECK(f.service.NextHit("fr", "a").status ==
        AnnotationService::NextStatus::kNoneAvailable);
}

TEST_CASE("submissions, progress and report") {
  Fixture f;
  auto hits = Hits();
  CHECK(f.service.Submit({"nope", "a", true, 0}) ==
        AnnotationService::SubmitStatus::kUnknownTriplet);
  CHECK(f.service.Submit({"en-0/0", "x", true, 0}) ==
        AnnotationService::SubmitStatus::kNotQualified);
  f.JudgeHit(hits[0], "a", true);
  f.JudgeHit(hits[0], "b", true);
  CHECK(f.service.Submit({"en-0/0", "a", false, 0}) ==
        AnnotationService::SubmitStatus::kDuplicate);
  CHECK(f.log.Snapshot()[0].submitted_at == 1000);

  Json p = f.service.Progress("en");
  CHECK(p["hits"] == 2);
  CHECK(p["triplets"] == 4);
  CHECK(p["judgments"] == 4);
  CHECK(p["aggregated"] == 0);

  CHECK(f.service.Submit({"en-0/0", "c", true, 0}) ==
        AnnotationService::SubmitStatus::kAccepted);
  CHECK(f.service.Submit({"en-0/1", "c", false, 0}) ==
        AnnotationService::SubmitStatus::kAccepted);
  p = f.service.Progress("en");
  CHECK(p["aggregated"] == 2);
  CHECK(p["pending"] == 2);

  AgreementReport r = f.service.Report("en");
  CHECK(r.alpha_defined);
  CHECK(r.n_annotators == 3);
  REQUIRE(r.filtered_pct);
  CHECK(*r.filtered_pct == 0.0);
  CHECK_FALSE(f.service.Report("es").alpha_defined);
}

TEST_CASE("relation descriptions fall back to English") {
  TempDir dir;
  WriteFile(dir.File("d.tsv"),
            "P17\ten\tcountry\tsovereign state\n"
            "P17\tes\tpaís\testado soberano\n"
            "P31\ten\tinstance of\tclass membership\n");
  auto d = RelationDescriptions::Load(dir.File("d.tsv"));
  Json es = d.For("es");
  CHECK(es["P17"]["name"] == "país");
  CHECK(es["P31"]["name"] == "instance of");
  CHECK(RelationDescriptions::Default().For("en").contains("P17"));
}

TEST_CASE("HTTP routes") {
  Fixture f;
  httplib::Server server;
  f.service.Bind(&server);
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  auto res = client.Get("/hits/next?lang=en&annotator=a");
  REQUIRE(res);
  CHECK(res->status == 200);
  Hit hit = HitFromJson(Json::parse(res->body));
  CHECK(hit.hit_id == "en-0");
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");

  CHECK(client.Get("/hits/next?lang=en")->status == 400);
  CHECK(client.Get("/hits/next?lang=en&annotator=x")->status == 403);
  CHECK(client.Get("/hits/next?lang=fr&annotator=a")->status == 204);

  std::string lines =
      R"({"triplet_id":"en-0/0","annotator_id":"a","verdict":true,"submitted_at":1})"
      "\n"
      R"({"triplet_id":"en-0/1","annotator_id":"a","verdict":false,"submitted_at":1})"
      "\n"
      R"({"triplet_id":"en-0/1","annotator_id":"a","verdict":true,"submitted_at":2})"
      "\n"
      R"({"triplet_id":"ghost","annotator_id":"a","verdict":true,"submitted_at":2})"
      "\n";
  res = client.Post("/judgments", lines, "application/x-ndjson");
  REQUIRE(res);
  Json body = Json::parse(res->body);
  CHECK(body["accepted"] == 2);
  CHECK(body["duplicates"] == 1);
  CHECK(body["rejected"].size() == 1);

  res = client.Post("/judgments",
                    R"({"triplet_id":"en-0/0","annotator_id":"b","verdict":true})",
                    "application/json");
  CHECK(Json::parse(res->body)["accepted"] == 1);
  CHECK(client.Post("/judgments", "{bad\nworse", "text/plain")->status == 400);

  CHECK(Json::parse(client.Get("/progress?lang=en")->body)["judgments"] == 3);
  CHECK(client.Get("/progress")->status == 400);
  Json report = Json::parse(client.Get("/report?lang=en")->body);
  CHECK(report["n_annotators"] == 2);
  CHECK(Json::parse(client.Get("/relations?lang=es")->body).contains("P17"));

  server.stop();
  t.join();
}
