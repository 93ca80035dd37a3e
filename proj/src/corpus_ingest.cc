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

#include "tripletkit/corpus_ingest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <thread>

#include "embedded_data.h"
#include "tripletkit/records.h"
#include "tripletkit/text.h"

namespace tripletkit {

namespace {

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool IsAsciiAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

std::string RegexEscape(std::string_view s) {
  static const std::string_view kSpecial = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : s) {
    if (kSpecial.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string JsonScalarToString(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<int64_t>());
  throw FormatError("expected string or integer");
}

// Splits raw link markup into document text and link spans. Returns false
// on unbalanced markup.
struct RawLink {
  size_t start;  // scalar offsets into the stripped text
  size_t end;
  std::string target;
  std::string surface;
};

bool StripLinks(std::string_view raw, std::string* text,
                std::vector<RawLink>* links, std::string* error) {
  size_t chars = 0;  // scalar values emitted so far
  size_t i = 0;
  while (i < raw.size()) {
    if (raw.compare(i, 2, "[[") == 0) {
      size_t close = raw.find("]]", i + 2);
      if (close == std::string_view::npos) {
        *error = "unclosed [[ at byte " + std::to_string(i);
        return false;
      }
      std::string_view inner = raw.substr(i + 2, close - i - 2);
      if (inner.find("[[") != std::string_view::npos) {
        *error = "nested [[ at byte " + std::to_string(i);
        return false;
      }
      std::string_view target = inner;
      std::string_view surface = inner;
      size_t bar = inner.find('|');
      if (bar != std::string_view::npos) {
        target = inner.substr(0, bar);
        surface = inner.substr(bar + 1);
      }
      size_t anchor = target.find('#');
      if (anchor != std::string_view::npos) target = target.substr(0, anchor);
      size_t len = Utf8Length(surface);
      links->push_back(
          {chars, chars + len, std::string(Trim(target)), std::string(surface)});
      text->append(surface);
      chars += len;
      i = close + 2;
      continue;
    }
    if (raw.compare(i, 2, "]]") == 0) {
      *error = "stray ]] at byte " + std::to_string(i);
      return false;
    }
    size_t n = Utf8SequenceLength(raw, i);
    text->append(raw.substr(i, n));
    ++chars;
    i += n;
  }
  return true;
}

bool Overlaps(const std::vector<Mention>& mentions, size_t start, size_t end) {
  for (const Mention& m : mentions) {
    if (start < m.end && m.start < end) return true;
  }
  return false;
}

int DaysInMonth(int year, int month) {
  static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

}  // namespace

// TitleMap

TitleMap TitleMap::Load(const std::string& path, const std::string& lang) {
  TitleMap map(lang);
  for (const auto& row : ReadTsv(path, 2)) map.Add(row[0], row[1]);
  return map;
}

void TitleMap::Add(const std::string& title, const std::string& entity_id) {
  auto [it, inserted] = entries_.emplace(title, entity_id);
  if (!inserted && it->second != entity_id) {
    throw FormatError("title '" + title + "' maps to both " + it->second +
                      " and " + entity_id);
  }
}

std::optional<std::string> TitleMap::Resolve(std::string_view title) const {
  auto it = entries_.find(std::string(title));
  if (it != entries_.end()) return it->second;
  std::string norm(title);
  std::replace(norm.begin(), norm.end(), '_', ' ');
  if (!norm.empty() && norm[0] >= 'a' && norm[0] <= 'z') {
    norm[0] = static_cast<char>(norm[0] - 'a' + 'A');
  }
  it = entries_.find(norm);
  if (it != entries_.end()) return it->second;
  return std::nullopt;
}

size_t IngestResult::CountReason(std::string_view reason) const {
  return static_cast<size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [&](const IngestDiagnostic& d) { return d.reason == reason; }));
}

std::optional<Document> ParseRecord(const std::string& line, size_t lineno,
                                    const TitleMaps& maps,
                                    IngestDiagnostic* diag,
                                    size_t* dropped_links) {
  auto fail = [&](std::string reason, std::string detail) {
    *diag = {lineno, std::move(reason), std::move(detail)};
    return std::nullopt;
  };
  Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return fail("malformed", "not a JSON object");
  }
  Document doc;
  std::string raw;
  try {
    for (const char* f : {"title", "page_id", "lang", "text"}) {
      if (!j.contains(f)) throw FormatError(std::string("missing field ") + f);
    }
    doc.title = JsonScalarToString(j["title"]);
    doc.page_id = JsonScalarToString(j["page_id"]);
    doc.lang = JsonScalarToString(j["lang"]);
    raw = JsonScalarToString(j["text"]);
    if (j.contains("doc_id")) doc.doc_id = JsonScalarToString(j["doc_id"]);
  } catch (const std::exception& e) {
    return fail("malformed", e.what());
  }
  if (!IsSupportedLanguage(doc.lang)) {
    return fail("unknown_language", doc.lang);
  }
  if (doc.doc_id.empty()) doc.doc_id = doc.lang + ":" + doc.page_id;

  std::vector<RawLink> links;
  std::string error;
  if (!StripLinks(raw, &doc.text, &links, &error)) {
    return fail("malformed", error);
  }
  auto map = maps.find(doc.lang);
  for (RawLink& link : links) {
    std::optional<std::string> id;
    if (map != maps.end() && !link.surface.empty() && !link.target.empty()) {
      id = map->second.Resolve(link.target);
    }
    if (!id) {
      ++*dropped_links;
      continue;
    }
    Mention m;
    m.start = link.start;
    m.end = link.end;
    m.surface = std::move(link.surface);
    m.kind = MentionKind::kEntity;
    m.entity_id = std::move(*id);
    doc.mentions.push_back(std::move(m));
  }
  return doc;
}

IngestResult ParseCorpus(std::span<const std::string> lines,
                         const TitleMaps& maps, int workers) {
  struct Slot {
    std::optional<Document> doc;
    IngestDiagnostic diag;
    size_t dropped = 0;
  };
  std::vector<Slot> slots(lines.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      slots[i].doc =
          ParseRecord(lines[i], i + 1, maps, &slots[i].diag, &slots[i].dropped);
    }
  };
  size_t n = lines.size();
  size_t w = std::max(1, workers);
  if (w == 1 || n < 2) {
    work(0, n);
  } else {
    std::vector<std::thread> threads;
    size_t chunk = (n + w - 1) / w;
    for (size_t b = 0; b < n; b += chunk) {
      threads.emplace_back(work, b, std::min(n, b + chunk));
    }
    for (auto& t : threads) t.join();
  }
  // Counters are merged after the parallel section.
  IngestResult result;
  result.records = n;
  for (Slot& s : slots) {
    result.dropped_links += s.dropped;
    if (s.doc) {
      result.documents.push_back(std::move(*s.doc));
    } else {
      result.diagnostics.push_back(std::move(s.diag));
    }
  }
  return result;
}

IngestResult ParseCorpusFile(const std::string& path, const TitleMaps& maps,
                             int workers) {
  std::vector<std::string> lines;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::vector<size_t> numbers;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    lines.push_back(line);
    numbers.push_back(lineno);
  }
  IngestResult result = ParseCorpus(lines, maps, workers);
  for (IngestDiagnostic& d : result.diagnostics) d.line = numbers[d.line - 1];
  return result;
}

// ValueLinker

ValueLinker ValueLinker::FromJson(const Json& config) {
  ValueLinker linker;
  const auto flags = std::regex::ECMAScript | std::regex::icase;
  linker.year_ = std::regex(config.at("year_regex").get<std::string>(), flags);
  const Json& patterns = config.at("patterns");

  auto build = [&](const Json& table_cfg) {
    auto table = std::make_shared<LanguageTable>();
    table->decimal_sep = table_cfg.value("decimal_sep", ".");
    table->group_sep = table_cfg.value("group_sep", ",");
    std::vector<std::string> names;
    if (table_cfg.contains("months")) {
      const Json& months = table_cfg.at("months");
      for (size_t m = 0; m < months.size(); ++m) {
        for (const Json& name : months[m]) {
          std::string s = name.get<std::string>();
          table->months[AsciiLower(s)] = static_cast<int>(m) + 1;
          names.push_back(s);
        }
      }
    }
    std::sort(names.begin(), names.end(),
              [](const std::string& a, const std::string& b) {
                return a.size() != b.size() ? a.size() > b.size() : a < b;
              });
    std::string alternation;
    for (const std::string& n : names) {
      if (!alternation.empty()) alternation += '|';
      alternation += RegexEscape(n);
    }
    for (const Json& pname : table_cfg.value("dates", Json::array())) {
      const Json& p = patterns.at(pname.get<std::string>());
      std::string re = p.at("regex").get<std::string>();
      size_t pos = re.find("{MONTH}");
      if (pos != std::string::npos) {
        if (alternation.empty()) continue;
        re.replace(pos, 7, alternation);
      }
      std::string order = p.at("order").get<std::string>();
      DatePattern dp;
      dp.re = std::regex(re, flags);
      for (int g = 0; g < 3; ++g) {
        switch (order.at(g)) {
          case 'd': dp.day_group = g + 1; break;
          case 'm': dp.month_group = g + 1; break;
          case 'y': dp.year_group = g + 1; break;
          default: throw FormatError("bad date group order: " + order);
        }
      }
      table->dates.push_back(std::move(dp));
    }
    std::string g = RegexEscape(table->group_sep);
    std::string d = RegexEscape(table->decimal_sep);
    table->number = std::regex("[0-9]{1,3}(?:" + g + "[0-9]{3})+(?:" + d +
                                   "[0-9]+)?|[0-9]+(?:" + d + "[0-9]+)?",
                               std::regex::ECMAScript);
    return table;
  };

  linker.tables_[""] = build(config.at("default"));
  for (const auto& [lang, table_cfg] : config.at("languages").items()) {
    linker.tables_[lang] = build(table_cfg);
  }
  return linker;
}

ValueLinker ValueLinker::Load(const std::string& path) {
  return FromJson(Json::parse(ReadFile(path)));
}

const ValueLinker& ValueLinker::Default() {
  static const ValueLinker kDefault =
      FromJson(Json::parse(EmbeddedData("value_patterns.json")));
  return kDefault;
}

std::optional<int> ValueLinker::MonthNumber(const LanguageTable& table,
                                            const std::string& token) const {
  if (!token.empty() && std::all_of(token.begin(), token.end(), IsDigit)) {
    int m = std::stoi(token);
    if (m >= 1 && m <= 12) return m;
    return std::nullopt;
  }
  auto it = table.months.find(AsciiLower(token));
  if (it == table.months.end()) return std::nullopt;
  return it->second;
}

std::string NormalizeNumber(std::string_view raw, std::string_view decimal_sep,
                            std::string_view group_sep) {
  std::string int_part, frac_part;
  bool in_frac = false;
  size_t i = 0;
  while (i < raw.size()) {
    if (!in_frac && !decimal_sep.empty() &&
        raw.compare(i, decimal_sep.size(), decimal_sep) == 0) {
      in_frac = true;
      i += decimal_sep.size();
      continue;
    }
    if (!group_sep.empty() && raw.compare(i, group_sep.size(), group_sep) == 0) {
      i += group_sep.size();
      continue;
    }
    if (IsDigit(raw[i])) (in_frac ? frac_part : int_part).push_back(raw[i]);
    ++i;
  }
  size_t nz = int_part.find_first_not_of('0');
  int_part = nz == std::string::npos ? "0" : int_part.substr(nz);
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  return frac_part.empty() ? int_part : int_part + "." + frac_part;
}

Document ValueLinker::LinkValues(Document doc) const {
  auto it = tables_.find(doc.lang);
  if (it == tables_.end()) it = tables_.find("");
  const LanguageTable& table = *it->second;
  const std::string& text = doc.text;
  Utf8Index index(text);

  std::vector<Mention> added;
  auto occupied = [&](size_t s, size_t e) {
    return Overlaps(doc.mentions, s, e) || Overlaps(added, s, e);
  };
  // A match must not continue a word or a number.
  auto bounded = [&](size_t b, size_t e) {
    if (b > 0 && IsAsciiAlnum(text[b - 1])) return false;
    if (e < text.size() && IsAsciiAlnum(text[e])) return false;
    return true;
  };
  auto try_add = [&](size_t b, size_t e, MentionKind kind,
                     std::string literal) {
    size_t cs = index.char_offset(b);
    size_t ce = index.char_offset(e);
    if (index.byte_offset(cs) != b || index.byte_offset(ce) != e) return;
    if (cs >= ce || occupied(cs, ce)) return;
    Mention m;
    m.start = cs;
    m.end = ce;
    m.surface = text.substr(b, e - b);
    m.kind = kind;
    m.literal = std::move(literal);
    added.push_back(std::move(m));
  };

  for (const DatePattern& p : table.dates) {
    for (std::sregex_iterator m(text.begin(), text.end(), p.re), end; m != end;
         ++m) {
      size_t b = static_cast<size_t>(m->position(0));
      size_t e = b + static_cast<size_t>(m->length(0));
      if (!bounded(b, e)) continue;
      auto month = MonthNumber(table, m->str(p.month_group));
      if (!month) continue;
      int day = std::stoi(m->str(p.day_group));
      int year = std::stoi(m->str(p.year_group));
      if (day < 1 || day > DaysInMonth(year, *month)) continue;
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, *month, day);
      try_add(b, e, MentionKind::kDate, buf);
    }
  }

  const std::string& dsep = table.decimal_sep;
  const std::string& gsep = table.group_sep;
  // Years glued to a separator and more digits belong to a number.
  auto part_of_number = [&](size_t b, size_t e) {
    for (const std::string* sep : {&dsep, &gsep}) {
      if (sep->empty() || *sep == " ") continue;
      size_t n = sep->size();
      if (e + n < text.size() && text.compare(e, n, *sep) == 0 &&
          IsDigit(text[e + n])) {
        return true;
      }
      if (b >= n + 1 && text.compare(b - n, n, *sep) == 0 &&
          IsDigit(text[b - n - 1])) {
        return true;
      }
    }
    return false;
  };
  for (std::sregex_iterator m(text.begin(), text.end(), year_), end; m != end;
       ++m) {
    size_t b = static_cast<size_t>(m->position(0));
    size_t e = b + static_cast<size_t>(m->length(0));
    if (!bounded(b, e) || part_of_number(b, e)) continue;
    try_add(b, e, MentionKind::kDate, m->str(0));
  }
  for (std::sregex_iterator m(text.begin(), text.end(), table.number), end;
       m != end; ++m) {
    size_t b = static_cast<size_t>(m->position(0));
    size_t e = b + static_cast<size_t>(m->length(0));
    if (!bounded(b, e)) continue;
    // Reject matches that start inside a longer digit run.
    if (b > 0 && IsDigit(text[b - 1])) continue;
    try_add(b, e, MentionKind::kQuantity, NormalizeNumber(m->str(0), dsep, gsep));
  }

  for (Mention& m : added) doc.mentions.push_back(std::move(m));
  std::stable_sort(doc.mentions.begin(), doc.mentions.end(),
                   [](const Mention& a, const Mention& b) {
                     return a.start < b.start;
                   });
  return doc;
}

Document LinkValues(Document doc) {
  return ValueLinker::Default().LinkValues(std::move(doc));
}

}  // namespace tripletkit
