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

#ifndef TRIPLETKIT_CORPUS_INGEST_H_
#define TRIPLETKIT_CORPUS_INGEST_H_

// Parsing of abstract corpora into entity-linked documents, plus the
// regex-based date and quantity linker.
//
// Corpus records are JSON lines {title, page_id, lang, text[, doc_id]}
// where text carries inline hyperlinks as [[Target Title|surface]] or
// [[Title]]. Links are resolved to entity ids with a per-language TitleMap;
// unresolvable links keep their surface text but produce no mention.

#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tripletkit/types.h"

namespace tripletkit {

class TitleMap {
 public:
  TitleMap() = default;
  explicit TitleMap(std::string lang) : lang_(std::move(lang)) {}

  // Two-column TSV: title \t entity_id. A title mapped to two different
  // ids raises FormatError.
  static TitleMap Load(const std::string& path, const std::string& lang);

  void Add(const std::string& title, const std::string& entity_id);

  // Exact lookup first, then with underscores read as spaces and an
  // upper-cased ASCII initial (MediaWiki title normalization).
  std::optional<std::string> Resolve(std::string_view title) const;

  const std::string& lang() const { return lang_; }
  size_t size() const { return entries_.size(); }

 private:
  std::string lang_;
  std::unordered_map<std::string, std::string> entries_;
};

// Title maps keyed by language code.
using TitleMaps = std::map<std::string, TitleMap, std::less<>>;

struct IngestDiagnostic {
  size_t line = 0;
  std::string reason;  // "malformed" or "unknown_language"
  std::string detail;
};

struct IngestResult {
  std::vector<Document> documents;
  std::vector<IngestDiagnostic> diagnostics;
  size_t records = 0;
  size_t dropped_links = 0;

  size_t CountReason(std::string_view reason) const;
};

// Parses a single record. On failure returns nullopt and fills |diag|.
// |dropped_links| is incremented for every unresolvable link.
std::optional<Document> ParseRecord(const std::string& line, size_t lineno,
                                    const TitleMaps& maps,
                                    IngestDiagnostic* diag,
                                    size_t* dropped_links);

// Parses every line. With workers > 1 records are parsed in parallel;
// output order and counters do not depend on the worker count.
IngestResult ParseCorpus(std::span<const std::string> lines,
                         const TitleMaps& maps, int workers = 1);

IngestResult ParseCorpusFile(const std::string& path, const TitleMaps& maps,
                             int workers = 1);

// Language-specific date and number patterns. See data/value_patterns.json
// for the schema: per language a list of date regexes (with a {MONTH}
// placeholder and a group order), month names, and number separators.
class ValueLinker {
 public:
  static ValueLinker FromJson(const nlohmann::json& config);
  static ValueLinker Load(const std::string& path);
  // The table shipped in data/value_patterns.json, compiled in.
  static const ValueLinker& Default();

  // Adds date and quantity mentions that do not overlap existing ones.
  // Idempotent; existing mentions always win.
  Document LinkValues(Document doc) const;

 private:
  struct DatePattern {
    std::regex re;
    int day_group = 0;
    int month_group = 0;
    int year_group = 0;
  };
  struct LanguageTable {
    std::vector<DatePattern> dates;
    std::unordered_map<std::string, int> months;  // lower-case name -> 1..12
    std::regex number;
    std::string decimal_sep;
    std::string group_sep;
  };

  std::optional<int> MonthNumber(const LanguageTable& table,
                                 const std::string& token) const;

  std::map<std::string, std::shared_ptr<const LanguageTable>, std::less<>>
      tables_;
  std::regex year_;
};

// Convenience wrapper using the default table.
Document LinkValues(Document doc);

// Canonical decimal string: group separators removed, '.' as decimal
// point, no leading zeros in the integer part, no trailing fraction zeros.
std::string NormalizeNumber(std::string_view raw, std::string_view decimal_sep,
                            std::string_view group_sep);

}  // namespace tripletkit

#endif  // TRIPLETKIT_CORPUS_INGEST_H_
