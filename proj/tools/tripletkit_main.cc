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

// tripletkit command-line tool: the whole pipeline (run) and each stage as
// its own subcommand over JSONL/TSV files.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "tripletkit/annotation.h"
#include "tripletkit/annotation_service.h"
#include "tripletkit/corpus_ingest.h"
#include "tripletkit/critic.h"
#include "tripletkit/dataset_build.h"
#include "tripletkit/entity_typing.h"
#include "tripletkit/evaluate.h"
#include "tripletkit/linearize.h"
#include "tripletkit/pipeline.h"
#include "tripletkit/records.h"
#include "tripletkit/scorer.h"
#include "tripletkit/triplet_extract.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;
using namespace tripletkit;

namespace {

// Settings from --config, if given. Relative paths in it resolve against
// the config file's directory.
struct Config {
  Json json = Json::object();
  std::string base = ".";

  void Load(const std::string& path) {
    if (path.empty()) return;
    json = Json::parse(ReadFile(path));
    base = fs::path(path).parent_path().string();
    if (base.empty()) base = ".";
  }
  std::string Path(const std::string& p) const {
    fs::path path(p);
    return path.is_relative() ? (fs::path(base) / path).string() : p;
  }
  // |flag| if set, else the config entry at |pointer| resolved as a path.
  std::string PathOr(const std::string& flag, const char* pointer) const {
    if (!flag.empty()) return flag;
    Json::json_pointer ptr(pointer);
    if (json.contains(ptr)) return Path(json.at(ptr).get<std::string>());
    return "";
  }
  template <typename T>
  T Value(const char* pointer, T fallback) const {
    return json.value(Json::json_pointer(pointer), fallback);
  }
};

std::string Require(const std::string& value, const char* what) {
  if (value.empty()) throw CLI::ValidationError(what, "required (flag or config)");
  return value;
}

std::vector<Document> ReadDocuments(const std::string& path) {
  return ReadJsonl<Document>(path, &DocumentFromJson);
}

std::vector<Triplet> ReadTriplets(const std::string& path) {
  return ReadJsonl<Triplet>(path, &TripletFromJson);
}

size_t CountStatus(const std::vector<Triplet>& ts, TripletStatus s) {
  size_t n = 0;
  for (const Triplet& t : ts) n += t.status == s;
  return n;
}

void PrintJson(const Json& j) { std::cout << j.dump() << '\n'; }

std::string ErrorLines(const std::vector<FilterErrorRecord>& errors,
                       const char* stage) {
  std::string out;
  for (const auto& e : errors) {
    out += Json{{"stage", stage}, {"triplet_id", e.triplet_id}, {"error", e.message}}
               .dump() +
           '\n';
  }
  return out;
}

// Scorer config: --mock-rules or --url override the config section.
Json ScorerConfig(const Config& cfg, const char* key, const std::string& rules,
                  const std::string& url, double mock_default) {
  Json j = cfg.json.value(key, Json{{"type", "mock"}, {"default", 1.0}});
  if (!rules.empty()) {
    j = {{"type", "mock"}, {"default", mock_default}, {"rules", fs::absolute(rules).string()}};
  } else if (!url.empty()) {
    j = {{"type", "http"}, {"url", url}};
  }
  return j;
}

struct FilterFlags {
  std::string documents, triplets, vocab, out, errors, rules, url;
  double threshold = -1;
  double mock_default = 1.0;
  size_t batch = 0;
};

void AddFilterFlags(CLI::App* app, FilterFlags* f) {
  app->add_option("--documents", f->documents, "documents.jsonl")->required();
  app->add_option("--triplets", f->triplets, "triplets.jsonl")->required();
  app->add_option("--vocab", f->vocab, "relation vocabulary TSV (pid, name)");
  app->add_option("--threshold", f->threshold, "reject below this score");
  app->add_option("--mock-rules", f->rules, "mock scorer rule TSV");
  app->add_option("--mock-default", f->mock_default, "mock score for unlisted pairs");
  app->add_option("--url", f->url, "HTTP scoring service");
  app->add_option("--batch-size", f->batch, "pairs per request");
  app->add_option("-o,--out", f->out, "output triplets.jsonl")->required();
  app->add_option("--errors", f->errors, "scorer failures as JSONL");
}

void RunFilter(const Config& cfg, const FilterFlags& f, bool nli) {
  const char* key = nli ? "nli_scorer" : "critic_scorer";
  Json sc = ScorerConfig(cfg, key, f.rules, f.url, f.mock_default);
  size_t batch = f.batch ? f.batch : sc.value("batch_size", size_t{32});
  auto scorer = MakeScorer(sc, cfg.base);
  double threshold = f.threshold >= 0
                         ? f.threshold
                         : cfg.Value(nli ? "/thresholds/nli" : "/thresholds/critic",
                                     nli ? kDefaultNliThreshold : kDefaultCriticThreshold);
  auto docs = ReadDocuments(f.documents);
  auto triplets = ReadTriplets(f.triplets);
  RelationVocab vocab = f.vocab.empty() ? RelationVocab::Default() : RelationVocab::Load(f.vocab);
  DocIndex index = IndexDocuments(docs);
  BatchFilterResult r =
      nli ? NliFilterBatch(triplets, index, *scorer, vocab, threshold, batch)
          : CriticFilterBatch(triplets, index, *scorer, vocab, threshold, batch);
  WriteFile(f.out, ToJsonl(r.triplets));
  if (!f.errors.empty()) WriteFile(f.errors, ErrorLines(r.errors, key));
  TripletStatus rejected = nli ? TripletStatus::kNliRejected : TripletStatus::kCriticRejected;
  PrintJson({{"threshold", threshold},
             {"silver", CountStatus(r.triplets, TripletStatus::kSilver)},
             {"rejected", CountStatus(r.triplets, rejected)},
             {"errors", r.errors.size()}});
}

SplitRatios RatiosFrom(const std::vector<double>& v) {
  if (v.size() != 3) throw CLI::ValidationError("--ratios", "expects three values");
  return {v[0], v[1], v[2]};
}

volatile std::sig_atomic_t g_stop = 0;
httplib::Server* g_server = nullptr;

void OnSignal(int) {
  g_stop = 1;
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual relation-extraction dataset construction and scoring"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  int workers = 0;
  app.add_option("-c,--config", config_path, "JSON config with paths, thresholds and seeds");
  app.add_option("-j,--workers", workers, "worker threads (overrides config)")
      ->check(CLI::PositiveNumber);
  Config cfg;
  int exit_code = 0;
  std::map<CLI::App*, std::function<void()>> actions;
  auto on = [&](CLI::App* sub, std::function<void()> f) { actions[sub] = std::move(f); };

  // run
  auto* run = app.add_subcommand("run", "run every stage and write a manifest");
  std::string run_out;
  run->add_option("-o,--output", run_out, "output directory (overrides config)");
  on(run, [&] {
    Require(config_path, "--config");
    Json c = cfg.json;
    if (workers > 0) c["workers"] = workers;
    PipelineResult r =
        RunPipeline(c, cfg.base, run_out.empty() ? "" : fs::absolute(run_out).string());
    for (const Json& line : r.manifest) {
      std::cerr << line.value("stage", "") << '\t' << line.value("status", "") << '\t'
                << line.value("counts", Json::object()).dump() << '\n';
    }
    if (!r.ok) {
      std::cerr << "failed at " << r.failed_stage << ": " << r.error << '\n';
      exit_code = 1;
    }
  });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse a linked corpus into documents");
  std::string corpus, value_patterns, ingest_out, ingest_errors;
  std::vector<std::string> titles;
  ingest->add_option("--corpus", corpus, "corpus JSONL");
  ingest->add_option("--titles", titles, "title map as lang=path (repeatable)");
  ingest->add_option("--value-patterns", value_patterns, "date/number pattern JSON");
  ingest->add_option("-o,--out", ingest_out, "documents.jsonl")->required();
  ingest->add_option("--errors", ingest_errors, "rejected records as JSONL");
  on(ingest, [&] {
    TitleMaps maps;
    if (titles.empty() && cfg.json.contains("title_maps")) {
      for (const auto& [lang, p] : cfg.json["title_maps"].items()) {
        maps.emplace(lang, TitleMap::Load(cfg.Path(p.get<std::string>()), lang));
      }
    }
    for (const std::string& t : titles) {
      size_t eq = t.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--titles", "expects lang=path");
      maps.emplace(t.substr(0, eq), TitleMap::Load(t.substr(eq + 1), t.substr(0, eq)));
    }
    int w = workers > 0 ? workers : cfg.Value("/workers", 1);
    IngestResult r = ParseCorpusFile(Require(cfg.PathOr(corpus, "/corpus"), "--corpus"),
                                     maps, w);
    std::string patterns = cfg.PathOr(value_patterns, "/value_patterns");
    ValueLinker custom;
    const ValueLinker* linker = &ValueLinker::Default();
    if (!patterns.empty()) {
      custom = ValueLinker::Load(patterns);
      linker = &custom;
    }
    size_t entities = 0, values = 0;
    for (Document& d : r.documents) {
      entities += d.mentions.size();
      d = linker->LinkValues(std::move(d));
      values += d.mentions.size();
    }
    WriteFile(ingest_out, ToJsonl(r.documents));
    if (!ingest_errors.empty()) {
      std::string lines;
      for (const auto& d : r.diagnostics) {
        lines += Json{{"stage", "ingest"}, {"line", d.line}, {"reason", d.reason},
                      {"error", d.detail}}.dump() + '\n';
      }
      WriteFile(ingest_errors, lines);
    }
    PrintJson({{"records", r.records},
               {"documents", r.documents.size()},
               {"malformed", r.CountReason("malformed")},
               {"unknown_language", r.CountReason("unknown_language")},
               {"dropped_links", r.dropped_links},
               {"entity_mentions", entities},
               {"value_mentions", values - entities}});
  });

  // extract
  auto* extract = app.add_subcommand(
      "extract", "align documents with the triple store, collapse inverses, keep top-K");
  std::string ex_docs, store, relations, inverse, ex_out, vocab_out;
  int top_k = 0;
  bool per_language = false;
  extract->add_option("--documents", ex_docs, "documents.jsonl")->required();
  extract->add_option("--triple-store", store, "subj/pid/obj TSV");
  extract->add_option("--relations", relations, "pid/name TSV");
  extract->add_option("--inverse-relations", inverse, "inverse pid pairs TSV");
  extract->add_option("--top-k", top_k, "relations kept");
  extract->add_flag("--per-language", per_language, "top-K within each language");
  extract->add_option("-o,--out", ex_out, "triplets.jsonl")->required();
  extract->add_option("--vocab-out", vocab_out, "kept relations TSV (pid, name, frequency)");
  on(extract, [&] {
    auto docs = ReadDocuments(ex_docs);
    TripleStore ts = TripleStore::Load(Require(cfg.PathOr(store, "/triple_store"),
                                               "--triple-store"));
    std::vector<Triplet> raw;
    for (const Document& d : docs) {
      for (Triplet& t : Align(d, ts)) raw.push_back(std::move(t));
    }
    std::string rel_path = cfg.PathOr(relations, "/relations");
    RelationVocab vocab = rel_path.empty() ? RelationVocab::Default() : RelationVocab::Load(rel_path);
    std::string inv_path = cfg.PathOr(inverse, "/inverse_relations");
    auto pairs = inv_path.empty() ? DefaultInversePairs() : LoadInversePairs(inv_path);
    vocab.set_inverse_map(BuildInverseMap(pairs, raw));
    size_t candidates = raw.size(), swapped = 0, unknown = 0;
    for (Triplet& t : raw) {
      Collapsed c = CollapseInverse(t, vocab);
      unknown += !c.known;
      swapped += c.triplet.pid != t.pid;
      t = std::move(c.triplet);
    }
    raw = DedupeFacts(std::move(raw));
    int k = top_k > 0 ? top_k : cfg.Value("/top_k", 400);
    bool per_lang = per_language || cfg.Value("/top_k_per_language", false);
    TopKResult r = SelectTopK(raw, k, vocab, per_lang);
    WriteFile(ex_out, ToJsonl(r.kept));
    if (!vocab_out.empty()) {
      std::string tsv;
      for (const RelationEntry& e : r.vocab.entries()) {
        tsv += e.pid + '\t' + e.name_en + '\t' + std::to_string(r.frequencies[e.pid]) + '\n';
      }
      WriteFile(vocab_out, tsv);
    }
    PrintJson({{"facts", ts.size()},
               {"candidates", candidates},
               {"swapped", swapped},
               {"unknown_relations", unknown},
               {"triplets", raw.size()},
               {"relations", r.vocab.entries().size()},
               {"kept", r.kept.size()}});
  });

  // filter-nli / filter-critic
  FilterFlags nli_flags, critic_flags;
  auto* nli = app.add_subcommand("filter-nli", "entailment filter over candidate triplets");
  AddFilterFlags(nli, &nli_flags);
  on(nli, [&] { RunFilter(cfg, nli_flags, true); });
  auto* critic = app.add_subcommand("filter-critic", "critic filter over silver triplets");
  AddFilterFlags(critic, &critic_flags);
  on(critic, [&] { RunFilter(cfg, critic_flags, false); });

  // type-entities
  auto* typing = app.add_subcommand(
      "type-entities", "classifier training subset and confirm-or-replace merge");
  std::string nodes, edges, core, subset_out, prior, predicted, merged_out;
  typing->add_option("--nodes", nodes, "synset TSV (id, lemma, description)");
  typing->add_option("--edges", edges, "synset edge TSV");
  typing->add_option("--core", core, "core synset ids, one per line");
  typing->add_option("--subset-out", subset_out, "training subset as classifier inputs TSV");
  typing->add_option("--prior", prior, "prior entity type TSV");
  typing->add_option("--predicted", predicted, "predicted entity type TSV");
  typing->add_option("-o,--out", merged_out, "merged entity type TSV");
  on(typing, [&] {
    Json report = Json::object();
    if (!nodes.empty()) {
      SynsetGraph g = SynsetGraph::Load(nodes, Require(edges, "--edges"), Require(core, "--core"));
      auto subset = SelectTrainingSubset(g.synsets());
      std::string tsv;
      for (const Synset& s : subset) tsv += s.synset_id + '\t' + BuildInput(s) + '\n';
      if (!subset_out.empty()) WriteFile(subset_out, tsv);
      report["synsets"] = g.synsets().size();
      report["subset"] = subset.size();
    }
    if (!prior.empty() || !predicted.empty()) {
      MergeResult r = ConfirmOrReplace(EntityTypeMap::Load(Require(prior, "--prior")),
                                       EntityTypeMap::Load(Require(predicted, "--predicted")));
      if (!merged_out.empty()) WriteFile(merged_out, r.final_map.ToTsv());
      report["confirmations"] = r.confirmations;
      report["changes"] = r.changes;
      report["added"] = r.added;
    }
    if (report.empty()) throw CLI::ValidationError("type-entities", "give --nodes or --prior");
    PrintJson(report);
  });

  // annotate-export
  auto* exporter = app.add_subcommand("annotate-export", "sample silver triplets into HITs");
  std::string ax_docs, ax_triplets, ax_vocab, ax_out;
  std::vector<std::string> ax_langs;
  size_t sample_size = 0;
  int gold_top_k = 0;
  uint64_t ax_seed = 0;
  exporter->add_option("--documents", ax_docs, "documents.jsonl")->required();
  exporter->add_option("--triplets", ax_triplets, "triplets.jsonl")->required();
  exporter->add_option("--vocab", ax_vocab, "relation vocabulary TSV");
  exporter->add_option("--gold-top-k", gold_top_k, "annotate the K most frequent relations");
  exporter->add_option("--languages", ax_langs, "languages of the common-pages rule");
  exporter->add_option("--sample-size", sample_size, "weighted sample size");
  exporter->add_option("--seed", ax_seed, "sampling seed");
  exporter->add_option("-o,--out", ax_out, "hits.jsonl")->required();
  on(exporter, [&] {
    auto docs = ReadDocuments(ax_docs);
    auto triplets = ReadTriplets(ax_triplets);
    RelationVocab vocab = ax_vocab.empty() ? RelationVocab::Default() : RelationVocab::Load(ax_vocab);
    std::vector<Triplet> silver;
    for (const Triplet& t : triplets) {
      if (t.status == TripletStatus::kSilver) silver.push_back(t);
    }
    int k = gold_top_k > 0 ? gold_top_k : cfg.Value("/gold_top_k", 32);
    RelationVocab gold;
    if (!silver.empty()) gold = SelectTopK(silver, k, vocab).vocab;
    std::vector<Triplet> eligible;
    std::set<std::string> langs_seen;
    for (const Triplet& t : silver) {
      if (gold.Contains(t.pid)) {
        eligible.push_back(t);
        langs_seen.insert(t.lang);
      }
    }
    std::vector<std::string> langs = ax_langs;
    if (langs.empty()) langs = cfg.Value("/annotation/languages", std::vector<std::string>{});
    if (langs.empty()) langs.assign(langs_seen.begin(), langs_seen.end());
    SamplingConfig sc;
    sc.seed = exporter->count("--seed") ? ax_seed : cfg.Value("/seeds/sample", uint64_t{0});
    sc.random_sample_size =
        sample_size ? sample_size : cfg.Value("/annotation/sample_size", eligible.size());
    auto sampled = SampleForAnnotation(eligible, langs, sc);
    DocIndex index = IndexDocuments(docs);
    auto hits = AssignHits(sampled, index, vocab);
    std::string out;
    for (const Hit& h : hits) out += ToJson(h).dump() + '\n';
    WriteFile(ax_out, out);
    PrintJson({{"eligible", eligible.size()}, {"sampled", sampled.size()}, {"hits", hits.size()}});
  });

  // aggregate
  auto* aggregate = app.add_subcommand(
      "aggregate", "majority-vote judgments, agreement and filtered percentage");
  std::string ag_judgments, ag_triplets, ag_out;
  size_t required = 0, quorum = 0;
  aggregate->add_option("--judgments", ag_judgments, "judgments JSONL")->required();
  aggregate->add_option("--triplets", ag_triplets, "triplets.jsonl (languages, and --out)");
  aggregate->add_option("--required", required, "judgments per triplet");
  aggregate->add_option("--quorum", quorum, "true votes for gold_true");
  aggregate->add_option("-o,--out", ag_out, "triplets.jsonl with verdicts applied");
  on(aggregate, [&] {
    AggregateOptions opts{required ? required : cfg.Value("/annotation/required", size_t{3}),
                          quorum ? quorum : cfg.Value("/annotation/quorum", size_t{2})};
    auto judgments = ReadJsonl<Judgment>(ag_judgments, &JudgmentFromJson);
    auto verdicts = Aggregate(judgments, opts);
    std::vector<Triplet> triplets;
    if (!ag_triplets.empty()) triplets = ReadTriplets(ag_triplets);
    std::map<std::string, Triplet*> by_id;
    for (Triplet& t : triplets) by_id[t.triplet_id] = &t;
    std::map<std::string, std::string> lang_of;
    size_t ignored = 0;
    for (const auto& [id, v] : verdicts) {
      if (triplets.empty()) {
        lang_of[id] = "all";
        continue;
      }
      auto it = by_id.find(id);
      if (it == by_id.end() || it->second->status != TripletStatus::kSilver) {
        ++ignored;
        continue;
      }
      lang_of[id] = it->second->lang;
      if (v != Verdict::kPending) {
        it->second->status =
            v == Verdict::kGoldTrue ? TripletStatus::kGoldTrue : TripletStatus::kGoldFalse;
      }
    }
    std::map<std::string, std::vector<Judgment>> per_lang;
    for (const Judgment& j : judgments) {
      auto it = lang_of.find(j.triplet_id);
      if (it != lang_of.end()) per_lang[it->second].push_back(j);
    }
    Json reports = Json::array();
    for (const auto& [lang, js] : per_lang) {
      reports.push_back(ToJson(ComputeAgreement(js, lang, lang_of, opts)));
    }
    size_t counts[3] = {0, 0, 0};
    for (const auto& [id, v] : verdicts) {
      if (lang_of.count(id)) ++counts[static_cast<int>(v)];
    }
    if (!ag_out.empty()) WriteFile(ag_out, ToJsonl(triplets));
    PrintJson({{"judgments", judgments.size()},
               {"gold_true", counts[0]},
               {"gold_false", counts[1]},
               {"pending", counts[2]},
               {"ignored", ignored},
               {"languages", reports}});
  });

  // split
  auto* split = app.add_subcommand("split", "assign pages to train/validation/test");
  std::string sp_docs, interlanguage, sp_out;
  std::vector<double> ratios;
  uint64_t split_seed = 0;
  split->add_option("--documents", sp_docs, "documents.jsonl")->required();
  split->add_option("--interlanguage", interlanguage, "key/lang/page_id TSV");
  split->add_option("--ratios", ratios, "train validation test")->expected(3);
  split->add_option("--seed", split_seed, "split seed");
  split->add_option("-o,--out", sp_out, "splits.tsv")->required();
  on(split, [&] {
    InterlanguageTable table;
    std::string il = cfg.PathOr(interlanguage, "/interlanguage");
    if (!il.empty()) table = InterlanguageTable::Load(il);
    std::vector<PageRef> pages;
    for (const Document& d : ReadDocuments(sp_docs)) pages.push_back({d.lang, d.page_id});
    SplitRatios r;
    if (!ratios.empty()) {
      r = RatiosFrom(ratios);
    } else if (cfg.json.contains("split_ratios")) {
      r = RatiosFrom(cfg.json["split_ratios"].get<std::vector<double>>());
    }
    uint64_t seed = split->count("--seed") ? split_seed : cfg.Value("/seeds/split", uint64_t{0});
    SplitAssignment a = AssignSplits(pages, r, seed, table);
    WriteFile(sp_out, a.ToTsv());
    std::map<std::string, size_t> n;
    for (const auto& [key, s] : a.keys()) ++n[std::string(SplitName(s))];
    PrintJson({{"pages", a.pages().size()}, {"page_keys", a.keys().size()}, {"keys", n}});
  });

  // build
  auto* build = app.add_subcommand("build", "write per-split, per-language dataset files");
  std::string b_docs, b_triplets, b_splits, b_vocab, b_types, b_out, status = "silver";
  build->add_option("--documents", b_docs, "documents.jsonl")->required();
  build->add_option("--triplets", b_triplets, "triplets.jsonl")->required();
  build->add_option("--splits", b_splits, "splits.tsv")->required();
  build->add_option("--vocab", b_vocab, "relations to keep (pid, name TSV)");
  build->add_option("--types", b_types, "entity type TSV");
  build->add_option("--status", status, "triplet status kept")
      ->check(CLI::IsMember({"silver", "gold_true"}));
  build->add_option("-o,--out-dir", b_out, "output directory")->required();
  on(build, [&] {
    auto docs = ReadDocuments(b_docs);
    auto triplets = ReadTriplets(b_triplets);
    SplitAssignment splits = SplitAssignment::FromTsv(ReadFile(b_splits));
    RelationVocab vocab = b_vocab.empty() ? RelationVocab::Default() : RelationVocab::Load(b_vocab);
    std::string types_path = cfg.PathOr(b_types, "/entity_types");
    EntityTypeMap types;
    if (!types_path.empty()) types = EntityTypeMap::Load(types_path);
    TripletStatus keep = status == "silver" ? TripletStatus::kSilver : TripletStatus::kGoldTrue;
    BuildResult r = BuildDataset(triplets, IndexDocuments(docs), vocab, types, splits, keep);
    std::vector<DatasetRecord> all;
    for (const auto& [s, by_lang] : r.files) {
      for (const auto& [lang, recs] : by_lang) {
        WriteFile((fs::path(b_out) / SplitName(s) / (lang + ".jsonl")).string(), ToJsonl(recs));
        all.insert(all.end(), recs.begin(), recs.end());
      }
    }
    WriteFile((fs::path(b_out) / "counts.tsv").string(), r.counts.ToTsv());
    auto location = DefaultLocationRelations();
    if (cfg.json.contains("location_relations")) {
      location = cfg.json["location_relations"].get<std::set<std::string>>();
    }
    WriteFile((fs::path(b_out) / "distribution.json").string(),
              ToJson(Distribution(all, location)).dump(2) + "\n");
    size_t relations = 0;
    for (const auto& rec : all) relations += rec.relations.size();
    PrintJson({{"records", all.size()}, {"triplets", relations}});
  });

  // linearize
  auto* linearize = app.add_subcommand("linearize", "dataset records to seq2seq samples");
  std::string lin_in, lin_out;
  bool untyped = false;
  double rc_fraction = 0;
  uint64_t lin_seed = 0;
  linearize->add_option("-i,--input", lin_in, "dataset JSONL")->required();
  linearize->add_option("-o,--out", lin_out, "samples JSONL")->required();
  linearize->add_flag("--untyped", untyped, "use <subj>/<obj> instead of type tokens");
  linearize->add_option("--rc-fraction", rc_fraction, "share of records turned into RC")
      ->check(CLI::Range(0.0, 1.0));
  linearize->add_option("--seed", lin_seed, "RC sampling seed");
  on(linearize, [&] {
    auto recs = ReadJsonl<DatasetRecord>(lin_in, &DatasetRecordFromJson);
    auto samples = SampleRcFraction(recs, rc_fraction, lin_seed, {!untyped});
    std::string out;
    for (const auto& s : samples) out += ToJson(s).dump() + '\n';
    WriteFile(lin_out, out);
    PrintJson({{"samples", samples.size()}});
  });

  // score
  auto* score = app.add_subcommand("score", "micro/macro F1 against gold records");
  std::string gold_path, pred_path, mode = "strict";
  bool per_relation = false, by_language = false, as_json = false, targets = false,
       buckets = false;
  score->add_option("--gold", gold_path, "gold dataset JSONL")->required();
  score->add_option("--pred", pred_path, "predicted dataset JSONL")->required();
  score->add_option("--mode", mode, "strict or boundaries")
      ->check(CLI::IsMember({"strict", "boundaries"}));
  score->add_flag("--per-relation", per_relation, "per-relation table");
  score->add_flag("--per-language", by_language, "per-language table");
  score->add_flag("--targets", targets,
                  "predictions are {doc_id, lang, target} lines; match on surfaces");
  score->add_flag("--buckets", buckets, "bucket strict false positives by error kind");
  score->add_flag("--json", as_json, "print JSON");
  on(score, [&] {
    auto golds = ReadJsonl<DatasetRecord>(gold_path, &DatasetRecordFromJson);
    std::vector<DatasetRecord> preds;
    if (targets) {
      ForEachLine(pred_path, [&](const std::string& line, size_t) {
        Json j = Json::parse(line);
        preds.push_back(PredictionFromTarget(j.at("doc_id").get<std::string>(),
                                             j.value("lang", ""),
                                             j.at("target").get<std::string>()));
      });
    } else {
      preds = ReadJsonl<DatasetRecord>(pred_path, &DatasetRecordFromJson);
    }
    ScoreReport r = ScoreRe(preds, golds, {ParseMatchMode(mode), targets});
    Json bucket_json = Json::object();
    if (buckets) {
      for (const auto& [b, n] : BucketErrors(preds, golds, targets)) {
        bucket_json[std::string(ErrorBucketName(b))] = n;
      }
    }
    if (as_json) {
      Json j = ToJson(r);
      if (buckets) j["error_buckets"] = bucket_json;
      PrintJson(j);
    } else {
      std::cout << FormatReport(r, per_relation, by_language);
      for (const auto& [name, n] : bucket_json.items()) {
        std::cout << name << '\t' << n.get<size_t>() << '\n';
      }
    }
  });

  // serve-annotation
  auto* serve = app.add_subcommand("serve-annotation", "HTTP service for HIT annotation");
  std::string hits_path, log_path, annotators_path, descriptions, host = "127.0.0.1";
  int port = 8080;
  int64_t lease = 1800;
  serve->add_option("--hits", hits_path, "hits.jsonl")->required();
  serve->add_option("--log", log_path, "judgment log JSONL (appended)")->required();
  serve->add_option("--annotators", annotators_path,
                    "annotator TSV (id, qualified 1/0)")->required();
  serve->add_option("--descriptions", descriptions, "relation descriptions TSV");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port");
  serve->add_option("--lease-seconds", lease, "HIT lease duration");
  on(serve, [&] {
    std::vector<Hit> hits;
    ForEachLine(hits_path, [&](const std::string& line, size_t) {
      hits.push_back(HitFromJson(Json::parse(line)));
    });
    std::map<std::string, bool> annotators;
    for (const auto& row : ReadTsv(annotators_path, 1)) {
      annotators[row[0]] = row.size() < 2 || row[1] == "1" || row[1] == "true";
    }
    JudgmentLog log(log_path);
    ServiceOptions opts;
    opts.aggregate = {cfg.Value("/annotation/required", size_t{3}),
                      cfg.Value("/annotation/quorum", size_t{2})};
    opts.lease_seconds = lease;
    AnnotationService service(std::move(hits), &log, std::move(annotators),
                              descriptions.empty() ? RelationDescriptions::Default()
                                                   : RelationDescriptions::Load(descriptions),
                              opts);
    httplib::Server server;
    service.Bind(&server);
    g_server = &server;
    std::signal(SIGINT, OnSignal);
    std::signal(SIGTERM, OnSignal);
    std::cerr << "listening on " << host << ':' << port << '\n';
    if (!server.listen(host, port) && !g_stop) {
      throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    cfg.Load(config_path);
    actions.at(app.get_subcommands().front())();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
