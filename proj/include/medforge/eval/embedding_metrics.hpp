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

#include <vector>

#include "medforge/eval/text_metrics.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::eval {

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

struct BertScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Greedy max matching over per-token embeddings (one embed call per
// token), cosine clamped at 0, no idf weighting, no rescaling.
BertScore BertScoreOf(const TextPair& pair, gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint);

// Same scoring over precomputed token vectors.
BertScore BertScoreFromVectors(const std::vector<std::vector<double>>& cand,
                               const std::vector<std::vector<double>>& ref);

// max(0, cosine) * 100 over one vector per whole text.
double Sts(const TextPair& pair, gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint);

std::vector<double> EmbedText(const std::string& text, gateway::ModelGateway& gw,
                              const gateway::EndpointConfig& endpoint);

}  // namespace medforge::eval
