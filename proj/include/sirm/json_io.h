// Copyright 2026 The SIRM Authors.
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

// JSON encodings of families, scenes, problems and reports. Every top-level
// document carries "schema_version": 1.

#ifndef SIRM_JSON_IO_H_
#define SIRM_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "sirm/feature_map.h"
#include "sirm/learners.h"
#include "sirm/scenarios.h"
#include "sirm/scene.h"

namespace sirm {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json ToJson(const FeatureMap& map);
FeatureMap FeatureMapFromJson(const Json& j, int dim, int output_dim);

// {kind, D, K, maps: [{J: [...]} | {matrix: [[...]]} | {identity: true}]}
Json ToJson(const FeatureFamily& family);
FeatureFamily FeatureFamilyFromJson(const Json& j);

Json ToJson(const Scene& scene);
Scene SceneFromJson(const Json& j);

Json ToJson(const ShiftProblem& problem);
ShiftProblem ShiftProblemFromJson(const Json& j);

// Infinite values are written as the string "inf" and absent values as null.
Json ToJson(const LearnerOutput& out);
Json ToJson(const CertReport& report);

// Throws Error naming the path on I/O or parse failure.
Json LoadJsonFile(const std::string& path);
// Pretty-printed with a trailing newline.
void SaveJsonFile(const Json& j, const std::string& path);

}  // namespace sirm

#endif  // SIRM_JSON_IO_H_
