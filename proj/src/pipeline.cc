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

#include "tripletkit/pipeline.h"

#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <thread>

#include "tripletkit/annotation.h"
#include "tripletkit/corpus_ingest.h"
#include "tripletkit/critic.h"
#include "tripletkit/dataset_build.h"
#include "tripletkit/entity_typing.h"
#include "tripletkit/records.h"
#include "tripletkit/triplet_extract.h"

namespace tripletkit {

namespace {

namespace fs = std::filesystem;

// Runs fn(i) for i in [0, n) on |workers| threads; rethrows the first
// exception.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)>& fn) {
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> threads;
  size_t count = std::min(n, static_cast<size_t>(workers));
  for (size_t w = 0; w < count; ++w) {
    threads.emplace_back([&] {
      for (size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

size_t CountStatus(const std::vector<Triplet>& ts, TripletStatus s) {
  size_t n = 0;
  for (const Triplet& t : ts) n += t.status == s;
  return n;
}

Json ErrorsJson(const std::vector<FilterErrorRecord>& errors, const char* stage) {
  Json out = Json::array();
  for (const auto& e : errors) {
    out.push_back({{"stage", stage}, {"triplet_id", e.triplet_id}, {"error", e.message}});
  }
  return out;
}

class Run {
 public:
  Run(const Json& config, std::string base_dir, std::string output_dir)
      : config_(config), base_(std::move(base_dir)), out_(std::move(output_dir)) {}

  PipelineResult Execute() {
    PipelineResult result;
    const std::vector<std::pair<const char*, void (Run::*)()>> stages = {
        {"config", &Run::Configure},  {"ingest", &Run::Ingest},
        {"align", &Run::AlignStage},  {"collapse", &Run::Collapse},
        {"top_k", &Run::TopK},        {"nli_filter", &Run::Nli},
        {"critic_filter", &Run::Critic}, {"typing", &Run::Typing},
        {"annotation", &Run::Annotation}, {"split", &Run::SplitStage},
        {"build", &Run::Build},
    };
    for (const auto& [name, stage] : stages) {
      counts_ = Json::object();
      params_ = Json::object();
      try {
        (this->*stage)();
      } catch (const std::exception& e) {
        result.failed_stage = name;
        result.error = e.what();
        manifest_.push_back({{"stage", name},
                             {"status", "failed"},
                             {"counts", counts_},
                             {"params", params_},
                             {"error", e.what()}});
        break;
      }
      if (skipped_) {
        manifest_.push_back({{"stage", name}, {"status", "skipped"}});
        skipped_ = false;
        continue;
      }
      manifest_.push_back(
          {{"stage", name}, {"status", "ok"}, {"counts", counts_}, {"params", params_}});
    }
    result.ok = result.failed_stage.empty();
    if (result.ok) {
      Json errors = Json::array();
      for (auto& e : errors_) errors.push_back(e);
      Write("errors.jsonl", Lines(errors));
    }
    result.manifest = manifest_;
    Json manifest = Json::array();
    for (const auto& m : manifest_) manifest.push_back(m);
    try {
      Write("manifest.jsonl", Lines(manifest));
    } catch (const std::exception& e) {
      if (result.ok) {
        result.ok = false;
        result.failed_stage = "manifest";
        result.error = e.what();
      }
    }
    return result;
  }

 private:
  std::string Path(const std::string& p) const {
    fs::path path(p);
    if (path.is_relative()) path = fs::path(base_) / path;
    return path.string();
  }

  void Write(const std::string& name, const std::string& content) const {
    WriteFile((fs::path(out_) / name).string(), content);
  }

  static std::string Lines(const Json& items) {
    std::string s;
    for (const auto& j : items) {
      s += j.dump();
      s += '\n';
    }
    return s;
  }

  void Configure() {
    if (out_.empty()) out_ = config_.value("output_dir", "out");
    out_ = Path(out_);
    workers_ = config_.value("workers", 1);
    nli_threshold_ = config_.value("/thresholds/nli"_json_pointer, kDefaultNliThreshold);
    critic_threshold_ =
        config_.value("/thresholds/critic"_json_pointer, kDefaultCriticThreshold);
    top_k_ = config_.value("top_k", 400);
    gold_top_k_ = config_.value("gold_top_k", 32);
    per_language_ = config_.value("top_k_per_language", false);
    split_seed_ = config_.value("/seeds/split"_json_pointer, uint64_t{0});
    sample_seed_ = config_.value("/seeds/sample"_json_pointer, uint64_t{0});
    if (config_.contains("split_ratios")) {
      const Json& r = config_["split_ratios"];
      ratios_ = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()};
    }
    params_ = {{"workers", workers_},
               {"thresholds", {{"nli", nli_threshold_}, {"critic", critic_threshold_}}},
               {"top_k", top_k_},
               {"gold_top_k", gold_top_k_},
               {"top_k_per_language", per_language_},
               {"seeds", {{"split", split_seed_}, {"sample", sample_seed_}}},
               {"split_ratios", {ratios_.train, ratios_.validation, ratios_.test}}};
  }

  void Ingest() {
    TitleMaps maps;
    for (const auto& [lang, path] : config_.at("title_maps").items()) {
      maps.emplace(lang, TitleMap::Load(Path(path.get<std::string>()), lang));
    }
    std::string corpus = config_.at("corpus").get<std::string>();
    params_["corpus"] = corpus;
    IngestResult ingest = ParseCorpusFile(Path(corpus), maps, workers_);
    for (const auto& d : ingest.diagnostics) {
      errors_.push_back({{"stage", "ingest"},
                         {"line", d.line},
                         {"reason", d.reason},
                         {"error", d.detail}});
    }
    const ValueLinker* linker = &ValueLinker::Default();
    ValueLinker custom;
    if (config_.contains("value_patterns")) {
      custom = ValueLinker::Load(Path(config_["value_patterns"].get<std::string>()));
      linker = &custom;
    }
    docs_ = std::move(ingest.documents);
    size_t entity_mentions = 0;
    for (const Document& d : docs_) entity_mentions += d.mentions.size();
    ParallelFor(docs_.size(), workers_,
                [&](size_t i) { docs_[i] = linker->LinkValues(std::move(docs_[i])); });
    size_t value_mentions = 0;
    for (const Document& d : docs_) value_mentions += d.mentions.size();
    value_mentions -= entity_mentions;
    index_ = IndexDocuments(docs_);
    Write("documents.jsonl", ToJsonl(docs_));
    counts_ = {{"records", ingest.records},
               {"documents", docs_.size()},
               {"malformed", ingest.CountReason("malformed")},
               {"unknown_language", ingest.CountReason("unknown_language")},
               {"dropped_links", ingest.dropped_links},
               {"entity_mentions", entity_mentions},
               {"value_mentions", value_mentions}};
  }

  void AlignStage() {
    std::string store_path = config_.at("triple_store").get<std::string>();
    params_["triple_store"] = store_path;
    TripleStore store = TripleStore::Load(Path(store_path));
    std::vector<std::vector<Triplet>> per_doc(docs_.size());
    ParallelFor(docs_.size(), workers_,
                [&](size_t i) { per_doc[i] = Align(docs_[i], store); });
    for (auto& v : per_doc) {
      for (auto& t : v) triplets_.push_back(std::move(t));
    }
    counts_ = {{"facts", store.size()}, {"candidates", triplets_.size()}};
  }

  void Collapse() {
    vocab_ = config_.contains("relations")
                 ? RelationVocab::Load(Path(config_["relations"].get<std::string>()))
                 : RelationVocab::Default();
    auto pairs = config_.contains("inverse_relations")
                     ? LoadInversePairs(Path(config_["inverse_relations"].get<std::string>()))
                     : DefaultInversePairs();
    vocab_.set_inverse_map(BuildInverseMap(pairs, triplets_));
    size_t unknown = 0, swapped = 0;
    for (Triplet& t : triplets_) {
      Collapsed c = CollapseInverse(t, vocab_);
      unknown += !c.known;
      swapped += c.triplet.pid != t.pid;
      t = std::move(c.triplet);
    }
    size_t before = triplets_.size();
    triplets_ = DedupeFacts(std::move(triplets_));
    counts_ = {{"swapped", swapped},
               {"unknown_relations", unknown},
               {"duplicates", before - triplets_.size()},
               {"triplets", triplets_.size()}};
  }

  void TopK() {
    TopKResult r = SelectTopK(triplets_, top_k_, vocab_, per_language_);
    triplets_ = std::move(r.kept);
    top_vocab_ = std::move(r.vocab);
    std::string tsv;
    for (const RelationEntry& e : top_vocab_.entries()) {
      tsv += e.pid + '\t' + e.name_en + '\t' + std::to_string(r.frequencies[e.pid]) + '\n';
    }
    Write("relations.tsv", tsv);
    counts_ = {{"relations", top_vocab_.entries().size()}, {"triplets", triplets_.size()}};
  }

  std::unique_ptr<PairScorer> Scorer(const char* key, size_t* batch) const {
    Json cfg = config_.value(key, Json{{"type", "mock"}, {"default", 1.0}});
    *batch = cfg.value("batch_size", size_t{32});
    return MakeScorer(cfg, base_);
  }

  void Nli() {
    size_t batch = 0;
    auto scorer = Scorer("nli_scorer", &batch);
    BatchFilterResult r =
        NliFilterBatch(triplets_, index_, *scorer, top_vocab_, nli_threshold_, batch);
    triplets_ = std::move(r.triplets);
    for (auto& e : ErrorsJson(r.errors, "nli_filter")) errors_.push_back(e);
    params_ = {{"threshold", nli_threshold_}};
    counts_ = {{"silver", CountStatus(triplets_, TripletStatus::kSilver)},
               {"rejected", CountStatus(triplets_, TripletStatus::kNliRejected)},
               {"errors", r.errors.size()}};
  }

  void Critic() {
    size_t batch = 0;
    auto scorer = Scorer("critic_scorer", &batch);
    BatchFilterResult r = CriticFilterBatch(triplets_, index_, *scorer, top_vocab_,
                                            critic_threshold_, batch);
    triplets_ = std::move(r.triplets);
    for (auto& e : ErrorsJson(r.errors, "critic_filter")) errors_.push_back(e);
    silver_snapshot_ = triplets_;
    params_ = {{"threshold", critic_threshold_}};
    counts_ = {{"silver", CountStatus(triplets_, TripletStatus::kSilver)},
               {"rejected", CountStatus(triplets_, TripletStatus::kCriticRejected)},
               {"errors", r.errors.size()}};
  }

  void Typing() {
    if (config_.contains("entity_types")) {
      std::string path = config_["entity_types"].get<std::string>();
      params_["entity_types"] = path;
      types_ = EntityTypeMap::Load(Path(path));
    }
    std::set<std::string> entities;
    for (const Triplet& t : triplets_) {
      if (t.status != TripletStatus::kSilver) continue;
      const Document& doc = *index_.at(t.doc_id);
      for (int m : {t.subj, t.obj}) {
        const Mention& mention = doc.mentions[m];
        if (mention.kind == MentionKind::kEntity) entities.insert(mention.entity_id);
      }
    }
    size_t typed = 0;
    for (const auto& e : entities) typed += types_.Get(e).has_value();
    counts_ = {{"entities", entities.size()},
               {"typed", typed},
               {"unknown", entities.size() - typed}};
  }

  void Annotation() {
    // Annotation and the gold set cover the most frequent silver relations.
    std::vector<Triplet> all_silver;
    for (const Triplet& t : silver_snapshot_) {
      if (t.status == TripletStatus::kSilver) all_silver.push_back(t);
    }
    if (!all_silver.empty()) {
      gold_vocab_ = SelectTopK(all_silver, gold_top_k_, top_vocab_).vocab;
    }
    params_["gold_relations"] = gold_vocab_.entries().size();
    if (!config_.contains("annotation")) {
      skipped_ = true;
      return;
    }
    const Json& cfg = config_["annotation"];
    AggregateOptions agg{cfg.value("required", size_t{3}), cfg.value("quorum", size_t{2})};
    params_ = {{"required", agg.required}, {"quorum", agg.quorum}};

    std::vector<Triplet> silver;
    for (const Triplet& t : triplets_) {
      if (t.status == TripletStatus::kSilver && gold_vocab_.Contains(t.pid)) {
        silver.push_back(t);
      }
    }
    SamplingConfig sampling;
    sampling.seed = sample_seed_;
    sampling.random_sample_size = cfg.value("sample_size", silver.size());
    std::vector<std::string> langs = cfg.value("languages", std::vector<std::string>{});
    if (langs.empty()) {
      std::set<std::string> seen;
      for (const Triplet& t : silver) seen.insert(t.lang);
      langs.assign(seen.begin(), seen.end());
    }
    auto sampled = SampleForAnnotation(silver, langs, sampling);
    auto hits = AssignHits(sampled, index_, top_vocab_);
    std::string hits_out;
    for (const Hit& h : hits) hits_out += ToJson(h).dump() + '\n';
    Write("hits.jsonl", hits_out);
    params_["sample_size"] = sampling.random_sample_size;
    counts_ = {{"sampled", sampled.size()}, {"hits", hits.size()}};

    if (!cfg.contains("judgments")) return;
    std::string path = cfg["judgments"].get<std::string>();
    params_["judgments"] = path;
    auto judgments = ReadJsonl<Judgment>(Path(path), &JudgmentFromJson);
    auto verdicts = Aggregate(judgments, agg);
    std::map<std::string, std::string> lang_of;
    size_t applied = 0, ignored = 0;
    std::map<std::string, Triplet*> by_id;
    for (Triplet& t : triplets_) by_id[t.triplet_id] = &t;
    for (const auto& [id, v] : verdicts) {
      auto it = by_id.find(id);
      if (it == by_id.end() || it->second->status != TripletStatus::kSilver) {
        ++ignored;
        continue;
      }
      lang_of[id] = it->second->lang;
      if (v == Verdict::kPending) continue;
      it->second->status =
          v == Verdict::kGoldTrue ? TripletStatus::kGoldTrue : TripletStatus::kGoldFalse;
      ++applied;
    }
    std::map<std::string, Verdict> known;
    for (const auto& [id, v] : verdicts) {
      if (lang_of.count(id)) known[id] = v;
    }
    std::map<std::string, std::string> all_lang;
    for (const auto& [id, lang] : lang_of) all_lang[id] = "all";
    auto by_lang = FilteredStats(known, lang_of);
    auto overall = FilteredStats(known, all_lang);
    counts_["judgments"] = judgments.size();
    counts_["gold_true"] = CountStatus(triplets_, TripletStatus::kGoldTrue);
    counts_["gold_false"] = CountStatus(triplets_, TripletStatus::kGoldFalse);
    counts_["pending"] = known.size() - applied;
    counts_["ignored"] = ignored;
    counts_["filtered_pct"] =
        overall.count("all") ? Json(overall["all"]) : Json(nullptr);
    counts_["filtered_pct_by_lang"] = by_lang;
  }

  void SplitStage() {
    InterlanguageTable table;
    if (config_.contains("interlanguage")) {
      std::string path = config_["interlanguage"].get<std::string>();
      params_["interlanguage"] = path;
      table = InterlanguageTable::Load(Path(path));
    }
    std::vector<PageRef> pages;
    for (const Document& d : docs_) pages.push_back({d.lang, d.page_id});
    splits_ = AssignSplits(pages, ratios_, split_seed_, table);
    Write("splits.tsv", splits_.ToTsv());
    std::map<DataSplit, size_t> keys;
    for (const auto& [key, s] : splits_.keys()) ++keys[s];
    counts_ = {{"pages", splits_.pages().size()}, {"page_keys", splits_.keys().size()}};
    for (DataSplit s : kSplits) counts_[std::string(SplitName(s))] = keys[s];
  }

  void Build() {
    Write("triplets.jsonl", ToJsonl(triplets_));
    BuildResult silver = BuildDataset(silver_snapshot_, index_, top_vocab_, types_,
                                      splits_, TripletStatus::kSilver);
    BuildResult gold = BuildGold(triplets_, index_, gold_vocab_, types_, splits_);
    auto location = DefaultLocationRelations();
    if (config_.contains("location_relations")) {
      location = config_["location_relations"].get<std::set<std::string>>();
    }
    Json distribution = Json::object();
    for (const auto& [name, built] : {std::pair{"silver", &silver}, {"gold", &gold}}) {
      std::vector<DatasetRecord> all;
      size_t records = 0, relations = 0;
      for (const auto& [split, by_lang] : built->files) {
        for (const auto& [lang, recs] : by_lang) {
          Write(std::string(name) + "/" + std::string(SplitName(split)) + "/" + lang +
                    ".jsonl",
                ToJsonl(recs));
          records += recs.size();
          for (const auto& r : recs) {
            relations += r.relations.size();
            all.push_back(r);
          }
        }
      }
      Write(std::string(name) + "_counts.tsv", built->counts.ToTsv());
      distribution[name] = ToJson(Distribution(all, location));
      counts_[std::string(name) + "_records"] = records;
      counts_[std::string(name) + "_triplets"] = relations;
    }
    Write("distribution.json", distribution.dump(2) + "\n");
  }

  const Json& config_;
  std::string base_;
  std::string out_;
  Json counts_;
  Json params_;
  bool skipped_ = false;
  std::vector<Json> manifest_;
  std::vector<Json> errors_;

  int workers_ = 1;
  double nli_threshold_ = kDefaultNliThreshold;
  double critic_threshold_ = kDefaultCriticThreshold;
  int top_k_ = 400;
  int gold_top_k_ = 32;
  bool per_language_ = false;
  uint64_t split_seed_ = 0;
  uint64_t sample_seed_ = 0;
  SplitRatios ratios_;

  std::vector<Document> docs_;
  DocIndex index_;
  std::vector<Triplet> triplets_;
  std::vector<Triplet> silver_snapshot_;
  RelationVocab vocab_;
  RelationVocab top_vocab_;
  RelationVocab gold_vocab_;
  EntityTypeMap types_;
  SplitAssignment splits_;
};

}  // namespace

PipelineResult RunPipeline(const Json& config, const std::string& base_dir,
                           const std::string& output_dir) {
  return Run(config, base_dir, output_dir).Execute();
}

PipelineResult RunPipelineFile(const std::string& config_path,
                               const std::string& output_dir) {
  Json config;
  try {
    config = Json::parse(ReadFile(config_path));
  } catch (const std::exception& e) {
    PipelineResult r;
    r.failed_stage = "config";
    r.error = e.what();
    return r;
  }
  std::string base = fs::path(config_path).parent_path().string();
  if (base.empty()) base = ".";
  return RunPipeline(config, base, output_dir);
}

}  // namespace tripletkit
