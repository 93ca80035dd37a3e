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

#include "tripletkit/dataset_build.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "embedded_data.h"
#include "tripletkit/records.h"
#include "tripletkit/text.h"

namespace tripletkit {

std::string_view SplitName(DataSplit s) {
  switch (s) {
    case DataSplit::kTrain: return "train";
    case DataSplit::kValidation: return "validation";
    case DataSplit::kTest: return "test";
  }
  return "";
}

std::optional<DataSplit> ParseSplit(std::string_view name) {
  for (DataSplit s : kSplits) {
    if (SplitName(s) == name) return s;
  }
  return std::nullopt;
}

InterlanguageTable InterlanguageTable::Load(const std::string& path) {
  InterlanguageTable t;
  for (const auto& row : ReadTsv(path, 3)) t.Add(row[0], row[1], row[2]);
  return t;
}

void InterlanguageTable::Add(const std::string& key, const std::string& lang,
                             const std::string& page_id) {
  auto [it, inserted] = keys_.emplace(std::make_pair(lang, page_id), key);
  if (!inserted && it->second != key) {
    throw FormatError("page " + lang + ":" + page_id +
                      " mapped to two keys: " + it->second + ", " + key);
  }
}

std::string InterlanguageTable::PageKey(const std::string& lang,
                                        const std::string& page_id) const {
  auto it = keys_.find({lang, page_id});
  return it == keys_.end() ? page_id : it->second;
}

void SplitAssignment::Set(const PageRef& page, const std::string& key,
                          DataSplit split) {
  auto [it, inserted] = keys_.emplace(key, split);
  if (!inserted && it->second != split) {
    throw std::logic_error("page key " + key + " assigned to two splits");
  }
  pages_[page] = split;
  key_of_[page] = key;
}

std::optional<DataSplit> SplitAssignment::Find(const std::string& lang,
                                           const std::string& page_id) const {
  auto it = pages_.find({lang, page_id});
  if (it == pages_.end()) return std::nullopt;
  return it->second;
}

std::string SplitAssignment::ToTsv() const {
  std::string out;
  for (const auto& [page, split] : pages_) {
    out += page.lang + '\t' + page.page_id + '\t' + key_of_.at(page) + '\t';
    out += SplitName(split);
    out += '\n';
  }
  return out;
}

SplitAssignment SplitAssignment::FromTsv(std::string_view text) {
  SplitAssignment a;
  for (const auto& row : ParseTsv(text, 4)) {
    auto split = ParseSplit(row[3]);
    if (!split) throw FormatError("unknown split " + row[3]);
    try {
      a.Set({row[0], row[1]}, row[2], *split);
    } catch (const std::logic_error& e) {
      throw FormatError(e.what());
    }
  }
  return a;
}

SplitAssignment AssignSplits(std::span<const PageRef> pages,
                             const SplitRatios& ratios, uint64_t seed,
                             const InterlanguageTable& table) {
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    throw std::invalid_argument("split ratios must be nonnegative and sum to 1");
  }
  SplitAssignment out;
  for (const PageRef& page : pages) {
    std::string key = table.PageKey(page.lang, page.page_id);
    double u = ToUnit(SeededHash(seed, key));
    DataSplit s = u < ratios.train                      ? DataSplit::kTrain
              : u < ratios.train + ratios.validation ? DataSplit::kValidation
                                                     : DataSplit::kTest;
    out.Set(page, key, s);
  }
  return out;
}

EntityRef MakeEntityRef(const Document& doc, int index,
                        const EntityTypeMap& types) {
  const Mention& m = doc.mentions.at(static_cast<size_t>(index));
  EntityRef e;
  e.surface = m.surface;
  e.start = m.start;
  e.end = m.end;
  switch (m.kind) {
    case MentionKind::kEntity:
      e.type = types.TypeOf(m.entity_id);
      e.entity_id = m.entity_id;
      break;
    case MentionKind::kDate:
      e.type = EntityType::kDate;
      break;
    case MentionKind::kQuantity:
      e.type = EntityType::kNumber;
      break;
  }
  return e;
}

size_t CountsTable::Total(const std::string& relation, DataSplit split) const {
  auto r = cells.find(relation);
  if (r == cells.end()) return 0;
  auto s = r->second.find(split);
  if (s == r->second.end()) return 0;
  size_t total = 0;
  for (const auto& [lang, n] : s->second) total += n;
  return total;
}

std::vector<std::string> CountsTable::RowOrder() const {
  std::vector<std::string> rows;
  for (const auto& [rel, c] : cells) rows.push_back(rel);
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    return Total(a, DataSplit::kTrain) > Total(b, DataSplit::kTrain);
  });
  return rows;
}

std::string CountsTable::ToTsv() const {
  std::string out = "relation";
  for (DataSplit s : kSplits) {
    for (const std::string& lang : langs) {
      out += '\t';
      out += SplitName(s);
      out += '.' + lang;
    }
  }
  for (DataSplit s : kSplits) {
    out += '\t';
    out += SplitName(s);
    out += ".total";
  }
  out += '\n';
  for (const std::string& rel : RowOrder()) {
    out += rel;
    const auto& by_split = cells.at(rel);
    for (DataSplit s : kSplits) {
      auto it = by_split.find(s);
      for (const std::string& lang : langs) {
        size_t n = 0;
        if (it != by_split.end()) {
          auto c = it->second.find(lang);
          if (c != it->second.end()) n = c->second;
        }
        out += '\t' + std::to_string(n);
      }
    }
    for (DataSplit s : kSplits) out += '\t' + std::to_string(Total(rel, s));
    out += '\n';
  }
  return out;
}

CountsTable CountRelations(const SplitFiles& files) {
  CountsTable t;
  std::set<std::string> langs;
  for (const auto& [split, by_lang] : files) {
    for (const auto& [lang, records] : by_lang) {
      langs.insert(lang);
      for (const DatasetRecord& r : records) {
        for (const RelationInstance& rel : r.relations) {
          ++t.cells[rel.relation][split][lang];
        }
      }
    }
  }
  t.langs.assign(langs.begin(), langs.end());
  return t;
}

BuildResult BuildDataset(std::span<const Triplet> triplets, const DocIndex& docs,
                         const RelationVocab& vocab, const EntityTypeMap& types,
                         const SplitAssignment& splits, TripletStatus keep) {
  std::map<std::string, DatasetRecord> records;
  for (const Triplet& t : triplets) {
    if (t.status != keep || !vocab.Contains(t.pid)) continue;
    auto d = docs.find(t.doc_id);
    if (d == docs.end()) {
      throw std::logic_error("triplet " + t.triplet_id + " has no document");
    }
    const Document& doc = *d->second;
    DatasetRecord& rec = records[doc.doc_id];
    if (rec.doc_id.empty()) {
      rec.doc_id = doc.doc_id;
      rec.page_id = doc.page_id;
      rec.lang = doc.lang;
      rec.title = doc.title;
      rec.text = doc.text;
    }
    rec.relations.push_back({MakeEntityRef(doc, t.subj, types),
                             MakeEntityRef(doc, t.obj, types), vocab.Name(t.pid),
                             t.pid});
  }
  BuildResult out;
  for (auto& [id, rec] : records) {
    auto split = splits.Find(rec.lang, rec.page_id);
    if (!split) {
      throw std::logic_error("page " + rec.lang + ":" + rec.page_id +
                             " has no split");
    }
    out.files[*split][rec.lang].push_back(std::move(rec));
  }
  out.counts = CountRelations(out.files);
  return out;
}

std::set<std::string> DefaultLocationRelations() {
  std::set<std::string> out;
  for (const std::string& line : Split(EmbeddedData("location_relations.txt"), '\n')) {
    std::string_view name = Trim(line);
    if (!name.empty() && name[0] != '#') out.emplace(name);
  }
  return out;
}

DistributionReport Distribution(std::span<const DatasetRecord> records,
                                const std::set<std::string>& location_relations) {
  std::map<std::string, std::map<std::string, size_t>> counts;
  for (const DatasetRecord& r : records) {
    for (const RelationInstance& rel : r.relations) {
      ++counts[r.lang][rel.relation];
      ++counts["all"][rel.relation];
    }
  }
  DistributionReport report;
  for (const auto& [lang, by_rel] : counts) {
    size_t total = 0, location = 0;
    for (const auto& [rel, n] : by_rel) {
      total += n;
      if (location_relations.count(rel)) location += n;
    }
    for (const auto& [rel, n] : by_rel) {
      report.shares[lang][rel] = {n, 100.0 * static_cast<double>(n) /
                                         static_cast<double>(total)};
    }
    report.location_percent[lang] =
        100.0 * static_cast<double>(location) / static_cast<double>(total);
  }
  return report;
}

nlohmann::json ToJson(const DistributionReport& r) {
  nlohmann::json shares = nlohmann::json::object();
  for (const auto& [lang, by_rel] : r.shares) {
    for (const auto& [rel, s] : by_rel) {
      shares[lang][rel] = {{"count", s.count}, {"percent", s.percent}};
    }
  }
  return {{"shares", std::move(shares)},
          {"location_percent", r.location_percent}};
}

}  // namespace tripletkit
