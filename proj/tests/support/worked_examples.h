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

#ifndef TRIPLETKIT_TESTS_WORKED_EXAMPLES_H_
#define TRIPLETKIT_TESTS_WORKED_EXAMPLES_H_

// The two worked linearization examples (Catalan extraction, Dutch
// classification) as structured records, with their expected strings.

#include <stdexcept>
#include <string>

#include "tripletkit/text.h"
#include "tripletkit/types.h"

namespace tripletkit::testing {

// Entity at the first occurrence of |surface| in |text|, scalar offsets.
inline EntityRef RefIn(const std::string& text, const std::string& surface,
                       EntityType type) {
  size_t byte = text.find(surface);
  if (byte == std::string::npos) throw std::logic_error("missing " + surface);
  size_t start = Utf8Length(std::string_view(text).substr(0, byte));
  return {surface, start, start + Utf8Length(surface), type, ""};
}

inline DatasetRecord CanVerboom() {
  DatasetRecord r;
  r.doc_id = "ca:can-verboom";
  r.lang = "ca";
  r.title = "Can Verboom";
  r.text =
      "Can Verboom és una masia amb elements gòtics i barrocs de Premià de "
      "Dalt ( Maresme ) protegida com a bé cultural d'interès local.";
  EntityRef subj = RefIn(r.text, "Can Verboom", EntityType::kLocation);
  r.relations.push_back(
      {subj, RefIn(r.text, "Premià de Dalt", EntityType::kLocation),
       "located in the administrative territorial entity", "P131"});
  r.relations.push_back(
      {subj, RefIn(r.text, "bé cultural d'interès local", EntityType::kLocation),
       "heritage designation", "P1435"});
  return r;
}

inline const char* kCanVerboomInput =
    "ca_XX Can Verboom és una masia amb elements gòtics i barrocs de Premià "
    "de Dalt ( Maresme ) protegida com a bé cultural d'interès local.";
inline const char* kCanVerboomTarget =
    "tp_XX<triplet> Can Verboom <loc> Premià de Dalt <loc> located in the "
    "administrative territorial entity <loc> bé cultural d'interès local "
    "<loc> heritage designation";

inline DatasetRecord MumbaiMirror() {
  DatasetRecord r;
  r.doc_id = "nl:mumbai-mirror";
  r.lang = "nl";
  r.title = "Mumbai Mirror";
  r.text =
      "Mumbai Mirror is een Engelstalige tabloid, die verschijnt in de "
      "Indiase stad Mumbai. Het is hier met een oplage van zo'n 700.000 "
      "exemplaren de belangrijkste krant. Het dagblad verscheen voor het "
      "eerst op 30 mei 2005,";
  r.relations.push_back({RefIn(r.text, "Mumbai Mirror", EntityType::kMedia),
                         RefIn(r.text, "30 mei 2005", EntityType::kDate),
                         "inception", "P571"});
  return r;
}

inline const char* kMumbaiMirrorInput =
    "nl_XX # Mumbai Mirror # is een Engelstalige tabloid, die verschijnt in "
    "de Indiase stad Mumbai. Het is hier met een oplage van zo'n 700.000 "
    "exemplaren de belangrijkste krant. Het dagblad verscheen voor het "
    "eerst op @ 30 mei 2005 @,";
inline const char* kMumbaiMirrorTarget =
    "tp_XX<relation> Mumbai Mirror <media> 30 mei 2005 <date> inception";

}  // namespace tripletkit::testing

#endif  // TRIPLETKIT_TESTS_WORKED_EXAMPLES_H_
