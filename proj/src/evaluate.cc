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

#include "tripletkit/evaluate.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "tripletkit/text.h"

namespace tripletkit {

namespace {

struct Entity {
  size_t start = 0;
  size_t end = 0;
  std::string norm;
  EntityType type = EntityType::kUnknown;

  auto Key(bool surface_only) const {
    return surface_only ? std::make_tuple(size_t{0}, size_t{0}, norm)
                        : std::make_tuple(start, end, std::string());
  }
};

struct Item {
  Entity subj;
  Entity obj;
  std::string relation;
};

Entity View(const EntityRef& e) {
  return {e.start, e.end, NormalizeSpace(e.surface), e.type};
}

Item View(const RelationInstance& r) {
  return {View(r.subject), View(r.object), std::string(Trim(r.relation))};
}

class Comparer {
 public:
  explicit Comparer(bool surface_only) : surface_(surface_only) {}

  bool Same(const Entity& a, const Entity& b) const {
    return surface_ ? a.norm == b.norm : a.start == b.start && a.end == b.end;
  }

  // |a| strictly inside |b|.
  bool Inside(const Entity& a, const Entity& b) const {
    if (Same(a, b)) return false;
    if (surface_) return b.norm.find(a.norm) != std::string::npos;
    return b.start <= a.start && a.end <= b.end;
  }

  bool Disjoint(const Entity& a, const Entity& b) const {
    if (surface_) {
      return a.norm.find(b.norm) == std::string::npos &&
             b.norm.find(a.norm) == std::string::npos;
    }
    return a.end <= b.start || b.end <= a.start;
  }

  bool Boundaries(const Item& p, const Item& g) const {
    return Same(p.subj, g.subj) && Same(p.obj, g.obj) &&
           p.relation == g.relation;
  }

  bool Strict(const Item& p, const Item& g) const {
    return Boundaries(p, g) && p.subj.type == g.subj.type &&
           p.obj.type == g.obj.type;
  }

 private:
  bool surface_;
};

std::vector<RelationInstance> Dedupe(std::span<const RelationInstance> in,
                                     bool surface_only) {
  std::set<std::tuple<decltype(Entity{}.Key(false)), EntityType,
                      decltype(Entity{}.Key(false)), EntityType, std::string>>
      seen;
  std::vector<RelationInstance> out;
  for (const RelationInstance& r : in) {
    Item v = View(r);
    if (seen.emplace(v.subj.Key(surface_only), v.subj.type,
                     v.obj.Key(surface_only), v.obj.type, v.relation)
            .second) {
      out.push_back(r);
    }
  }
  return out;
}

void Finalize(Scores* s) {
  s->precision = s->counts.Precision();
  s->recall = s->counts.Recall();
  s->micro_f1 = s->counts.F1();
  double sum = 0;
  for (const auto& [rel, c] : s->per_relation) sum += c.F1();
  s->macro_f1 = s->per_relation.empty()
                    ? 0.0
                    : sum / static_cast<double>(s->per_relation.size());
}

void Add(Scores* s, const std::map<std::string, Counts>& per_relation) {
  for (const auto& [rel, c] : per_relation) {
    s->per_relation[rel] += c;
    s->counts += c;
  }
}

template <typename Records>
std::map<std::string, const DatasetRecord*> ByDoc(const Records& records,
                                                  const char* what) {
  std::map<std::string, const DatasetRecord*> out;
  for (const DatasetRecord& r : records) {
    if (!out.emplace(r.doc_id, &r).second) {
      throw std::invalid_argument(std::string("duplicate doc_id in ") + what +
                                  ": " + r.doc_id);
    }
  }
  return out;
}

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double HarmonicF1(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

std::string_view MatchModeName(MatchMode m) {
  return m == MatchMode::kStrict ? "strict" : "boundaries";
}

MatchMode ParseMatchMode(std::string_view name) {
  if (name == "strict") return MatchMode::kStrict;
  if (name == "boundaries") return MatchMode::kBoundaries;
  throw std::invalid_argument("mode must be strict or boundaries");
}

double Counts::Precision() const { return Ratio(tp, tp + fp); }
double Counts::Recall() const { return Ratio(tp, tp + fn); }
double Counts::F1() const { return HarmonicF1(Precision(), Recall()); }

Counts& Counts::operator+=(const Counts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

DocMatch MatchDocument(std::span<const RelationInstance> preds,
                       std::span<const RelationInstance> golds,
                       const ScoreOptions& options) {
  DocMatch m;
  m.preds = Dedupe(preds, options.surface_only);
  m.golds = Dedupe(golds, options.surface_only);
  m.pred_matched.assign(m.preds.size(), false);
  m.gold_matched.assign(m.golds.size(), false);
  std::vector<Item> p, g;
  for (const auto& r : m.preds) p.push_back(View(r));
  for (const auto& r : m.golds) g.push_back(View(r));
  Comparer cmp(options.surface_only);

  auto pass = [&](auto equal) {
    for (size_t gi = 0; gi < g.size(); ++gi) {
      if (m.gold_matched[gi]) continue;
      for (size_t pi = 0; pi < p.size(); ++pi) {
        if (!m.pred_matched[pi] && equal(p[pi], g[gi])) {
          m.pred_matched[pi] = m.gold_matched[gi] = true;
          m.pairs.emplace_back(pi, gi);
          break;
        }
      }
    }
  };
  pass([&](const Item& a, const Item& b) { return cmp.Strict(a, b); });
  if (options.mode == MatchMode::kBoundaries) {
    pass([&](const Item& a, const Item& b) { return cmp.Boundaries(a, b); });
  }
  return m;
}

ScoreReport ScoreRe(std::span<const DatasetRecord> preds,
                    std::span<const DatasetRecord> golds,
                    const ScoreOptions& options) {
  auto gold_docs = ByDoc(golds, "golds");
  auto pred_docs = ByDoc(preds, "predictions");
  std::set<std::string> doc_ids;
  for (const auto& [id, r] : gold_docs) doc_ids.insert(id);
  for (const auto& [id, r] : pred_docs) doc_ids.insert(id);

  ScoreReport report;
  report.options = options;
  for (const std::string& id : doc_ids) {
    auto g = gold_docs.find(id);
    auto p = pred_docs.find(id);
    std::span<const RelationInstance> gold_rel, pred_rel;
    if (g != gold_docs.end()) gold_rel = g->second->relations;
    if (p != pred_docs.end()) pred_rel = p->second->relations;
    const std::string& lang =
        g != gold_docs.end() ? g->second->lang : p->second->lang;

    DocMatch m = MatchDocument(pred_rel, gold_rel, options);
    std::map<std::string, Counts> per_relation;
    for (size_t i = 0; i < m.preds.size(); ++i) {
      const std::string rel(Trim(m.preds[i].relation));
      if (m.pred_matched[i]) {
        ++per_relation[rel].tp;
      } else {
        ++per_relation[rel].fp;
      }
    }
    for (size_t i = 0; i < m.golds.size(); ++i) {
      if (!m.gold_matched[i]) ++per_relation[std::string(Trim(m.golds[i].relation))].fn;
    }
    Add(&report.overall, per_relation);
    Add(&report.per_language[lang], per_relation);
  }
  Finalize(&report.overall);
  for (auto& [lang, s] : report.per_language) Finalize(&s);
  return report;
}

RcScores ScoreRc(std::span<const std::string> preds,
                 std::span<const std::string> golds,
                 std::string_view negative) {
  if (preds.size() != golds.size()) {
    throw std::invalid_argument("prediction and gold label counts differ");
  }
  size_t correct = 0, tp = 0, pred_pos = 0, gold_pos = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    bool p_pos = preds[i] != negative;
    bool g_pos = golds[i] != negative;
    pred_pos += p_pos;
    gold_pos += g_pos;
    if (preds[i] == golds[i]) {
      ++correct;
      if (g_pos) ++tp;
    }
  }
  RcScores s;
  s.precision = Ratio(tp, pred_pos);
  s.recall = Ratio(tp, gold_pos);
  s.micro_f1 = HarmonicF1(s.precision, s.recall);
  s.accuracy = Ratio(correct, preds.size());
  return s;
}

std::string_view ErrorBucketName(ErrorBucket b) {
  static constexpr std::string_view kNames[] = {
      "entity_type", "span_underlap", "span_overlap", "subject",
      "object",      "relation",      "other"};
  return kNames[static_cast<size_t>(b)];
}

ErrorBucket ClassifyError(const RelationInstance& pred,
                          std::span<const RelationInstance> golds,
                          bool surface_only) {
  Comparer c(surface_only);
  const Item p = View(pred);
  std::vector<Item> g;
  for (const auto& r : golds) g.push_back(View(r));
  auto any = [&](auto test) { return std::any_of(g.begin(), g.end(), test); };

  if (any([&](const Item& x) {
        return c.Boundaries(p, x) && !c.Strict(p, x);
      })) {
    return ErrorBucket::kEntityType;
  }
  if (any([&](const Item& x) {
        return p.relation == x.relation &&
               ((c.Same(p.obj, x.obj) && c.Inside(p.subj, x.subj)) ||
                (c.Same(p.subj, x.subj) && c.Inside(p.obj, x.obj)));
      })) {
    return ErrorBucket::kSpanUnderlap;
  }
  if (any([&](const Item& x) {
        return p.relation == x.relation &&
               ((c.Same(p.obj, x.obj) && c.Inside(x.subj, p.subj)) ||
                (c.Same(p.subj, x.subj) && c.Inside(x.obj, p.obj)));
      })) {
    return ErrorBucket::kSpanOverlap;
  }
  if (any([&](const Item& x) {
        return p.relation == x.relation && c.Same(p.obj, x.obj) &&
               c.Disjoint(p.subj, x.subj);
      })) {
    return ErrorBucket::kSubject;
  }
  if (any([&](const Item& x) {
        return p.relation == x.relation && c.Same(p.subj, x.subj) &&
               c.Disjoint(p.obj, x.obj);
      })) {
    return ErrorBucket::kObject;
  }
  if (any([&](const Item& x) {
        return c.Same(p.subj, x.subj) && c.Same(p.obj, x.obj) &&
               p.relation != x.relation;
      })) {
    return ErrorBucket::kRelation;
  }
  return ErrorBucket::kOther;
}

std::map<ErrorBucket, size_t> BucketErrors(std::span<const DatasetRecord> preds,
                                           std::span<const DatasetRecord> golds,
                                           bool surface_only) {
  auto gold_docs = ByDoc(golds, "golds");
  ScoreOptions options{MatchMode::kStrict, surface_only};
  std::map<ErrorBucket, size_t> out;
  for (int b = 0; b < kNumErrorBuckets; ++b) out[static_cast<ErrorBucket>(b)] = 0;
  for (const DatasetRecord& p : preds) {
    auto g = gold_docs.find(p.doc_id);
    std::span<const RelationInstance> gold_rel;
    if (g != gold_docs.end()) gold_rel = g->second->relations;
    DocMatch m = MatchDocument(p.relations, gold_rel, options);
    for (size_t i = 0; i < m.preds.size(); ++i) {
      if (!m.pred_matched[i]) {
        ++out[ClassifyError(m.preds[i], m.golds, surface_only)];
      }
    }
  }
  return out;
}

DatasetRecord PredictionFromTarget(const std::string& doc_id,
                                   const std::string& lang,
                                   std::string_view target,
                                   const DecodeOptions& options) {
  DatasetRecord rec;
  rec.doc_id = doc_id;
  rec.lang = lang;
  for (DecodedTriplet& t : Decode(target, options).triplets) {
    RelationInstance r;
    r.subject.surface = std::move(t.subject);
    r.subject.type = t.subject_type;
    r.object.surface = std::move(t.object);
    r.object.type = t.object_type;
    r.relation = std::move(t.relation);
    rec.relations.push_back(std::move(r));
  }
  return rec;
}

namespace {

nlohmann::json CountsJson(const Counts& c) {
  return {{"tp", c.tp},
          {"fp", c.fp},
          {"fn", c.fn},
          {"precision", c.Precision()},
          {"recall", c.Recall()},
          {"f1", c.F1()}};
}

nlohmann::json ScoresJson(const Scores& s) {
  nlohmann::json rel = nlohmann::json::object();
  for (const auto& [name, c] : s.per_relation) rel[name] = CountsJson(c);
  return {{"tp", s.counts.tp},
          {"fp", s.counts.fp},
          {"fn", s.counts.fn},
          {"precision", s.precision},
          {"recall", s.recall},
          {"micro_f1", s.micro_f1},
          {"macro_f1", s.macro_f1},
          {"per_relation", std::move(rel)}};
}

std::string Row(const std::string& label, const Counts& c, double p, double r,
                double micro, const std::string& macro) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-48s %6zu %6zu %6zu %6s %6s %6s %6s\n",
                label.c_str(), c.tp, c.fp, c.fn, FormatPercent(p).c_str(),
                FormatPercent(r).c_str(), FormatPercent(micro).c_str(),
                macro.c_str());
  return buf;
}

std::string ScoresRow(const std::string& label, const Scores& s) {
  return Row(label, s.counts, s.precision, s.recall, s.micro_f1,
             FormatPercent(s.macro_f1));
}

}  // namespace

nlohmann::json ToJson(const ScoreReport& r) {
  nlohmann::json langs = nlohmann::json::object();
  for (const auto& [lang, s] : r.per_language) langs[lang] = ScoresJson(s);
  return {{"mode", MatchModeName(r.options.mode)},
          {"surface_only", r.options.surface_only},
          {"overall", ScoresJson(r.overall)},
          {"per_language", std::move(langs)}};
}

std::string FormatPercent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
  return buf;
}

std::string FormatReport(const ScoreReport& r, bool per_relation,
                         bool per_language) {
  std::string out = "mode: ";
  out += MatchModeName(r.options.mode);
  if (r.options.surface_only) out += " (surface)";
  out += '\n';
  char header[256];
  std::snprintf(header, sizeof(header), "%-48s %6s %6s %6s %6s %6s %6s %6s\n",
                "scope", "tp", "fp", "fn", "P", "R", "micro", "macro");
  out += header;
  out += ScoresRow("all", r.overall);
  if (per_language) {
    for (const auto& [lang, s] : r.per_language) out += ScoresRow(lang, s);
  }
  if (per_relation) {
    out += '\n';
    out += header;
    for (const auto& [rel, c] : r.overall.per_relation) {
      out += Row(rel, c, c.Precision(), c.Recall(), c.F1(), "");
    }
  }
  return out;
}

}  // namespace tripletkit
