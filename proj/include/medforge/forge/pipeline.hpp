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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/corpus/ingest.hpp"
#include "medforge/forge/records.hpp"
#include "medforge/forge/stages.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::forge {

struct ForgeConfig {
  std::map<std::string, gateway::EndpointConfig> endpoints;  // "stage1".."stage5"
  gateway::Sampling sampling;                                 // seed defaults to `seed`
  std::uint64_t seed = 0;
  std::map<TaskType, int> quotas;  // records per figure; missing types default to 1
  std::size_t leakage_ngram = 4;
  int max_refinements = 3;
  double stage3_tolerance = 0.25;
  double spatial_tau = 0.05;
  std::size_t workers = 1;

  int Quota(TaskType t) const;
  const gateway::EndpointConfig& Endpoint(const std::string& role) const;  // throws InvalidConfig
  gateway::Sampling EffectiveSampling() const;
  nlohmann::json ToJson() const;
};

struct PipelineOptions {
  std::filesystem::path output_dir;
  std::filesystem::path checkpoint_dir;  // empty: output_dir
  bool resume = true;
  // Stop once this many figures are committed, as if the process were killed.
  std::optional<std::size_t> stop_after;
};

inline constexpr const char* kDatasetFile = "dataset.jsonl";
inline constexpr const char* kFiguresFile = "figures.jsonl";
inline constexpr const char* kCheckpointFile = "checkpoint.json";
inline constexpr const char* kRunReportFile = "run_report.json";

struct RunReport {
  std::size_t figures_total = 0;
  std::size_t figures_completed = 0;  // committed, including failures
  std::size_t records_total = 0;
  std::map<std::string, std::size_t> records_by_type;
  std::vector<nlohmann::json> figure_failures;  // {figure, error, message}
  std::size_t panel_failures = 0;
  std::size_t leakage_checked = 0;
  std::size_t leakage_initial = 0;
  std::size_t leakage_model_resolved = 0;
  std::size_t leakage_hard_redacted = 0;
  std::size_t schema_violations = 0;
  bool stopped_early = false;
  bool resumed = false;
  nlohmann::json gateway_stats;

  nlohmann::json ToJson() const;
  static RunReport FromJson(const nlohmann::json& j);
};

// Directory-safe form of an id: anything outside [A-Za-z0-9._-] becomes '_'.
std::string SafeComponent(const std::string& id);

RunReport RunPipeline(const std::vector<corpus::GatedFigure>& figures, const ForgeConfig& config,
                      gateway::ModelGateway& gw, const PipelineOptions& options);

// Model calls a run would issue with an empty cache. Stage 5 is an upper
// bound (every non-exempt record needing every refinement round).
nlohmann::json PlanCalls(const std::vector<corpus::GatedFigure>& figures, const ForgeConfig& config);

}  // namespace medforge::forge
