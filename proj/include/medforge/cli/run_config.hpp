// Copyright 2026 The medforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "medforge/bench/sampler.hpp"
#include "medforge/corpus/gates.hpp"
#include "medforge/forge/pipeline.hpp"
#include "medforge/gateway/gateway.hpp"
#include "medforge/quality/icc.hpp"

namespace medforge::cli {

// Endpoint roles: stage1..stage5, judge, bertscore, sts, tagger.
inline constexpr const char* kRoles[] = {"stage1", "stage2", "stage3",    "stage4", "stage5",
                                         "judge",  "bertscore", "sts", "tagger"};

struct RunConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path output_dir;
  std::filesystem::path cache_dir;
  std::filesystem::path checkpoint_dir;
  std::map<std::string, gateway::EndpointConfig> endpoints;
  corpus::GateConfig gates;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::map<forge::TaskType, int> task_mix;
  gateway::Sampling sampling;
  std::size_t leakage_ngram = 4;
  int max_refinements = 3;
  double stage3_tolerance = 0.25;
  double spatial_tau = 0.05;
  bench::BenchmarkSpec benchmark;
  quality::IccModel icc_model = quality::IccModel::kTwoWayRandomAbsolute;
  gateway::MockOptions mock;
  bool force_mock = false;

  // Throws InvalidConfig unless the role is configured. Under force_mock an
  // unconfigured role gets a mock endpoint "mock-<role>".
  gateway::EndpointConfig Endpoint(const std::string& role) const;
  bool HasEndpoint(const std::string& role) const;

  forge::ForgeConfig Forge() const;
  gateway::GatewayOptions Gateway() const;
  nlohmann::json ToJson() const;
};

// Throws InvalidConfig: unknown task types, workers < 1, repeated directories,
// credentials in the file.
RunConfig RunConfigFromJson(const nlohmann::json& j);
RunConfig LoadRunConfig(const std::filesystem::path& path);
void Validate(const RunConfig& config);

}  // namespace medforge::cli
