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
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/forge/records.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::eval {

// JSONL lines {"record_id": str, "prediction": str}. Duplicate ids are an error.
std::map<std::string, std::string> ReadPredictions(const std::filesystem::path& path);

struct EvalEndpoints {
  const gateway::EndpointConfig* bertscore = nullptr;  // embed endpoint; column omitted when null
  const gateway::EndpointConfig* sts = nullptr;
};

// Per task type: open-ended types get BLEU@4, ROUGE-L, BERTScore and STS
// (all x100); multi_choice gets Accuracy/F1/Recall/Precision. Records
// without a prediction are counted and skipped.
nlohmann::json EvaluatePredictions(const std::vector<forge::InstructionRecord>& records,
                                   const std::map<std::string, std::string>& predictions,
                                   gateway::ModelGateway* gw, const EvalEndpoints& endpoints);

// Pairwise judging of two prediction sets against the dataset answers.
// A/B placement per record is seeded from (seed, record_id).
nlohmann::json JudgePredictions(const std::vector<forge::InstructionRecord>& records,
                                const std::map<std::string, std::string>& predictions_a,
                                const std::map<std::string, std::string>& predictions_b,
                                gateway::ModelGateway& gw, const gateway::EndpointConfig& judge,
                                std::uint64_t seed);

}  // namespace medforge::eval
