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

#include "tripletkit/annotation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tripletkit/text.h"

namespace tripletkit {

std::vector<double> InverseFrequencyWeights(std::span<const Triplet> silver) {
  std::map<std::string, size_t> count;
  for (const Triplet& t : silver) ++count[t.pid];
  std::vector<double> w;
  w.reserve(silver.size());
  double total = 0;
  for (const Triplet& t : silver) {
    w.push_back(1.0 / static_cast<double>(count[t.pid]));
    total += w.back();
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<Triplet> SampleForAnnotation(std::span<const Triplet> silver,
                                         std::span<const std::string> langs,
                                         const SamplingConfig& config) {
  std::set<std::string> lang_set(langs.begin(), langs.end());
  std::vector<Triplet> eligible;
  for (const Triplet& t : silver) {
    if (!lang_set.count(t.lang)) continue;
    if (!config.relations.empty() && !config.relations.count(t.pid)) continue;
    eligible.push_back(t);
  }
  if (eligible.empty()) return {};

  std::map<std::string, std::set<std::string>> langs_of_page;
  for (const Triplet& t : eligible) langs_of_page[t.page_id].insert(t.lang);
  std::vector<bool> chosen(eligible.size(), false);
  for (size_t i = 0; i < eligible.size(); ++i) {
    chosen[i] = langs_of_page[eligible[i].page_id].size() == lang_set.size();
  }

  // Weighted sampling without replacement (Efraimidis-Spirakis): largest
  // log(u)/w wins, u hashed from the triplet id so the draw does not depend
  // on input order.
  std::vector<double> weights = InverseFrequencyWeights(eligible);
  std::vector<std::pair<double, size_t>> keys;
  for (size_t i = 0; i < eligible.size(); ++i) {
    if (chosen[i]) continue;
    double u = ToUnit(SeededHash(config.seed, eligible[i].triplet_id));
    if (u <= 0.0) u = 0x1.0p-53;
    keys.emplace_back(std::log(u) / weights[i], i);
  }
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return eligible[a.second].triplet_id < eligible[b.second].triplet_id;
  });
  size_t take = std::min(config.random_sample_size, keys.size());
  for (size_t k = 0; k < take; ++k) chosen[keys[k].second] = true;

  std::vector<Triplet> out;
  for (size_t i = 0; i < eligible.size(); ++i) {
    if (chosen[i]) out.push_back(std::move(eligible[i]));
  }
  return out;
}

nlohmann::json ToJson(const HitItem& item) {
  return {{"triplet_id", item.triplet_id},
          {"text", item.text},
          {"subject", {{"start", item.subj_start}, {"end", item.subj_end}}},
          {"object", {{"start", item.obj_start}, {"end", item.obj_end}}},
          {"pid", item.pid},
          {"relation", item.relation}};
}

nlohmann::json ToJson(const Hit& hit) {
  nlohmann::json items = nlohmann::json::array();
  for (const HitItem& item : hit.items) items.push_back(ToJson(item));
  return {{"hit_id", hit.hit_id},
          {"lang", hit.lang},
          {"partial", hit.partial},
          {"items", std::move(items)}};
}

Hit HitFromJson(const nlohmann::json& j) {
  try {
    Hit hit;
    hit.hit_id = j.at("hit_id").get<std::string>();
    hit.lang = j.at("lang").get<std::string>();
    hit.partial = j.value("partial", false);
    for (const auto& it : j.at("items")) {
      HitItem item;
      item.triplet_id = it.at("triplet_id").get<std::string>();
      item.text = it.at("text").get<std::string>();
      item.subj_start = it.at("subject").at("start").get<size_t>();
      item.subj_end = it.at("subject").at("end").get<size_t>();
      item.obj_start = it.at("object").at("start").get<size_t>();
      item.obj_end = it.at("object").at("end").get<size_t>();
      item.pid = it.at("pid").get<std::string>();
      item.relation = it.value("relation", "");
      hit.items.push_back(std::move(item));
    }
    return hit;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

std::vector<Hit> AssignHits(std::span<const Triplet> sampled,
                            const DocIndex& docs, const RelationVocab& vocab,
                            size_t per_hit) {
  if (per_hit == 0) throw std::invalid_argument("per_hit must be >= 1");
  std::map<std::string, std::vector<HitItem>> by_lang;
  for (const Triplet& t : sampled) {
    auto it = docs.find(t.doc_id);
    if (it == docs.end()) continue;
    const Document& doc = *it->second;
    const Mention& s = doc.mentions.at(t.subj);
    const Mention& o = doc.mentions.at(t.obj);
    by_lang[doc.lang].push_back({t.triplet_id, doc.text, s.start, s.end,
                                 o.start, o.end, t.pid, vocab.Name(t.pid)});
  }
  std::vector<Hit> hits;
  for (auto& [lang, items] : by_lang) {
    for (size_t b = 0, n = 0; b < items.size(); b += per_hit, ++n) {
      Hit hit;
      hit.lang = lang;
      hit.hit_id = lang + "-" + std::to_string(n);
      size_t e = std::min(items.size(), b + per_hit);
      hit.items.assign(items.begin() + b, items.begin() + e);
      hit.partial = hit.items.size() < per_hit;
      hits.push_back(std::move(hit));
    }
  }
  return hits;
}

std::vector<Judgment> DedupeJudgments(std::span<const Judgment> judgments) {
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<Judgment> out;
  for (const Judgment& j : judgments) {
    if (seen.emplace(j.triplet_id, j.annotator_id).second) out.push_back(j);
  }
  return out;
}

Verdict AggregateVerdicts(std::span<const bool> verdicts,
                          const AggregateOptions& options) {
  if (verdicts.size() < options.required) return Verdict::kPending;
  size_t yes = static_cast<size_t>(
      std::count(verdicts.begin(), verdicts.begin() + options.required, true));
  return yes >= options.quorum ? Verdict::kGoldTrue : Verdict::kGoldFalse;
}

std::map<std::string, Verdict> Aggregate(std::span<const Judgment> judgments,
                                         const AggregateOptions& options) {
  struct Tally {
    size_t seen = 0;
    size_t yes = 0;  // among the first |required|
  };
  std::map<std::string, Tally> tallies;
  for (const Judgment& j : DedupeJudgments(judgments)) {
    Tally& t = tallies[j.triplet_id];
    if (t.seen++ < options.required && j.verdict) ++t.yes;
  }
  std::map<std::string, Verdict> out;
  for (const auto& [id, t] : tallies) {
    if (t.seen < options.required) {
      out[id] = Verdict::kPending;
    } else {
      out[id] = t.yes >= options.quorum ? Verdict::kGoldTrue : Verdict::kGoldFalse;
    }
  }
  return out;
}

AlphaResult KrippendorffAlpha(const ReliabilityMatrix& matrix) {
  // Coincidence matrix o[c][k] over values {false, true}.
  double o[2][2] = {{0, 0}, {0, 0}};
  size_t pairable_units = 0;
  for (const auto& row : matrix) {
    size_t count[2] = {0, 0};
    for (const auto& cell : row) {
      if (cell) ++count[*cell ? 1 : 0];
    }
    size_t m = count[0] + count[1];
    if (m < 2) continue;
    ++pairable_units;
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < 2; ++k) {
        double pairs = c == k ? static_cast<double>(count[c]) * (count[c] - 1)
                              : static_cast<double>(count[c]) * count[k];
        o[c][k] += pairs / static_cast<double>(m - 1);
      }
    }
  }
  if (pairable_units == 0) {
    throw std::invalid_argument("alpha needs an item with two judgments");
  }
  double n_c[2] = {o[0][0] + o[0][1], o[1][0] + o[1][1]};
  double n = n_c[0] + n_c[1];
  AlphaResult r;
  r.pairable_values = static_cast<size_t>(std::llround(n));
  double observed = (o[0][1] + o[1][0]) / n;
  double expected = 2.0 * n_c[0] * n_c[1] / (n * (n - 1));
  if (expected == 0.0) {
    r.alpha = 1.0;
    r.degenerate = true;
    return r;
  }
  r.alpha = 1.0 - observed / expected;
  return r;
}

ReliabilityMatrix BuildReliabilityMatrix(std::span<const Judgment> judgments) {
  std::map<std::string, size_t> items, coders;
  auto unique = DedupeJudgments(judgments);
  for (const Judgment& j : unique) {
    items.emplace(j.triplet_id, 0);
    coders.emplace(j.annotator_id, 0);
  }
  size_t i = 0;
  for (auto& [id, idx] : items) idx = i++;
  i = 0;
  for (auto& [id, idx] : coders) idx = i++;
  ReliabilityMatrix m(items.size(),
                      std::vector<std::optional<bool>>(coders.size()));
  for (const Judgment& j : unique) {
    m[items[j.triplet_id]][coders[j.annotator_id]] = j.verdict;
  }
  return m;
}

std::map<std::string, double> FilteredStats(
    const std::map<std::string, Verdict>& aggregated,
    const std::map<std::string, std::string>& lang_of) {
  std::map<std::string, std::pair<size_t, size_t>> counts;  // true, false
  for (const auto& [id, v] : aggregated) {
    if (v == Verdict::kPending) continue;
    auto it = lang_of.find(id);
    const std::string lang = it == lang_of.end() ? "" : it->second;
    if (v == Verdict::kGoldTrue) {
      ++counts[lang].first;
    } else {
      ++counts[lang].second;
    }
  }
  std::map<std::string, double> out;
  for (const auto& [lang, c] : counts) {
    out[lang] = 100.0 * static_cast<double>(c.second) /
                static_cast<double>(c.first + c.second);
  }
  return out;
}

AgreementReport ComputeAgreement(std::span<const Judgment> judgments,
                                 const std::string& lang,
                                 const std::map<std::string, std::string>& lang_of,
                                 const AggregateOptions& options) {
  AgreementReport r;
  r.lang = lang;
  std::set<std::string> annotators;
  for (const Judgment& j : judgments) annotators.insert(j.annotator_id);
  r.n_annotators = annotators.size();
  try {
    AlphaResult a = KrippendorffAlpha(BuildReliabilityMatrix(judgments));
    r.alpha = a.alpha;
    r.alpha_degenerate = a.degenerate;
    r.alpha_defined = true;
  } catch (const std::invalid_argument&) {
    r.alpha_defined = false;
  }
  auto stats = FilteredStats(Aggregate(judgments, options), lang_of);
  auto it = stats.find(lang);
  if (it != stats.end()) r.filtered_pct = it->second;
  return r;
}

nlohmann::json ToJson(const AgreementReport& r) {
  nlohmann::json j = {{"lang", r.lang}, {"n_annotators", r.n_annotators}};
  if (r.alpha_defined) {
    j["alpha"] = r.alpha;
    j["alpha_degenerate"] = r.alpha_degenerate;
  } else {
    j["alpha"] = nullptr;
  }
  if (r.filtered_pct) {
    j["filtered_pct"] = *r.filtered_pct;
  } else {
    j["filtered_pct"] = nullptr;
  }
  return j;
}

}  // namespace tripletkit
