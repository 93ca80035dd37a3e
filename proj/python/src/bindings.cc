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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "tripletkit/annotation.h"
#include "tripletkit/critic.h"
#include "tripletkit/evaluate.h"
#include "tripletkit/linearize.h"
#include "tripletkit/pipeline.h"
#include "tripletkit/records.h"

namespace py = pybind11;
using nlohmann::json;

namespace tripletkit {
namespace {

// Records cross the boundary as JSON text; the Python side wraps these in
// dict-based helpers.
std::vector<DatasetRecord> ParseRecords(const std::vector<std::string>& lines) {
  std::vector<DatasetRecord> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(DatasetRecordFromJson(json::parse(line)));
  return out;
}

std::string EncodeReJson(const std::string& record, bool typed) {
  return ToJson(EncodeRe(DatasetRecordFromJson(json::parse(record)), {typed})).dump();
}

std::string EncodeRcJson(const std::string& record, size_t index, bool typed) {
  return ToJson(EncodeRc(DatasetRecordFromJson(json::parse(record)), index, {typed}))
      .dump();
}

py::tuple DecodeTarget(const std::string& target, bool typed) {
  DecodeResult r = Decode(target, {typed, nullptr});
  py::list triplets;
  for (const DecodedTriplet& t : r.triplets) {
    py::dict d;
    d["subject"] = t.subject;
    d["subject_type"] = std::string(EntityTypeName(t.subject_type));
    d["object"] = t.object;
    d["object_type"] = std::string(EntityTypeName(t.object_type));
    d["relation"] = t.relation;
    triplets.append(d);
  }
  return py::make_tuple(triplets, r.diagnostics);
}

std::string ScoreJson(const std::vector<std::string>& preds,
                      const std::vector<std::string>& golds,
                      const std::string& mode) {
  ScoreOptions options;
  options.mode = ParseMatchMode(mode);
  std::vector<DatasetRecord> p = ParseRecords(preds);
  std::vector<DatasetRecord> g = ParseRecords(golds);
  return ToJson(ScoreRe(p, g, options)).dump();
}

double Alpha(const ReliabilityMatrix& matrix) {
  return KrippendorffAlpha(matrix).alpha;
}

py::dict Critic(const std::vector<bool>& preds, const std::vector<bool>& golds) {
  // std::vector<bool> has no contiguous storage.
  std::unique_ptr<bool[]> p(new bool[preds.size()]);
  std::unique_ptr<bool[]> g(new bool[golds.size()]);
  std::copy(preds.begin(), preds.end(), p.get());
  std::copy(golds.begin(), golds.end(), g.get());
  CriticMetrics m = ComputeCriticMetrics({p.get(), preds.size()},
                                         {g.get(), golds.size()});
  py::dict d;
  d["recall"] = m.recall;
  d["precision"] = m.precision;
  d["f1"] = m.f1;
  d["accuracy"] = m.accuracy;
  return d;
}

py::dict Run(const std::string& config_path, const std::string& output_dir) {
  PipelineResult r;
  {
    py::gil_scoped_release release;
    r = RunPipelineFile(config_path, output_dir);
  }
  py::list manifest;
  for (const auto& line : r.manifest) manifest.append(line.dump());
  py::dict d;
  d["ok"] = r.ok;
  d["failed_stage"] = r.failed_stage;
  d["error"] = r.error;
  d["manifest"] = manifest;
  return d;
}

}  // namespace
}  // namespace tripletkit

PYBIND11_MODULE(_core, m) {
  using namespace tripletkit;
  py::register_exception<EncodeError>(m, "EncodeError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  m.def("encode_re", &EncodeReJson, py::arg("record"), py::arg("typed") = true);
  m.def("encode_rc", &EncodeRcJson, py::arg("record"), py::arg("index"),
        py::arg("typed") = true);
  m.def("decode", &DecodeTarget, py::arg("target"), py::arg("typed") = true);
  m.def("score", &ScoreJson, py::arg("preds"), py::arg("golds"),
        py::arg("mode") = "strict");
  m.def("krippendorff_alpha", &Alpha, py::arg("matrix"));
  m.def("critic_metrics", &Critic, py::arg("preds"), py::arg("golds"));
  m.def("run_pipeline", &Run, py::arg("config_path"), py::arg("output_dir") = "");
}
