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

#ifndef TRIPLETKIT_PIPELINE_H_
#define TRIPLETKIT_PIPELINE_H_

// End-to-end dataset construction:
//   ingest -> align -> collapse -> top-K -> NLI filter -> critic filter ->
//   typing -> annotation (optional) -> split -> build
//
// Every stage appends one line to manifest.jsonl in the output directory
// with its counts and parameters; the first line records the resolved
// configuration. Outputs depend only on the configuration and inputs, so
// reruns are byte-identical. The configuration keys are listed in
// docs/formats.md.

#include <string>
#include <vector>

#include "json.hpp"

namespace tripletkit {

struct PipelineResult {
  bool ok = false;
  std::string failed_stage;
  std::string error;
  std::vector<nlohmann::json> manifest;
};

// Relative paths in |config| resolve against |base_dir|. A nonempty
// |output_dir| overrides the config's "output_dir".
PipelineResult RunPipeline(const nlohmann::json& config,
                           const std::string& base_dir,
                           const std::string& output_dir = "");

// Reads the config file; relative paths resolve against its directory.
PipelineResult RunPipelineFile(const std::string& config_path,
                               const std::string& output_dir = "");

}  // namespace tripletkit

#endif  // TRIPLETKIT_PIPELINE_H_
