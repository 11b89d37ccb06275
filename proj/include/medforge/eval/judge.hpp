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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/gateway/gateway.hpp"

namespace medforge::eval {

enum class Outcome { kWin, kLose, kTie };  // from output_a's point of view
std::string_view OutcomeName(Outcome o);

struct JudgeVerdict {
  Outcome outcome = Outcome::kTie;
  std::string rationale;
  bool swapped = false;  // output_b was shown first
  std::string digest;
};

// True when `ab_seed` puts output_b in the first position.
bool JudgeSwaps(std::uint64_t ab_seed);

gateway::ModelCall JudgeCall(const std::string& reference, const std::string& first, const std::string& second,
                             const gateway::Sampling& sampling);

// {"winner": "A"|"B"|"tie", "rationale": str}; a bare object, optionally in a
// ```json fence. Returns the winner ("A", "B", "tie") and rationale.
std::optional<std::pair<std::string, std::string>> ParseJudgeReply(const std::string& reply);

// Unparseable twice -> tie with rationale "unparseable".
JudgeVerdict JudgePairwise(const std::string& reference, const std::string& output_a, const std::string& output_b,
                           gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint,
                           std::uint64_t ab_seed, const gateway::Sampling& sampling = {});

struct JudgeSummary {
  std::size_t n = 0;
  std::size_t wins = 0, losses = 0, ties = 0;
  double win_pct = 0, lose_pct = 0, tie_pct = 0;
  std::size_t unparseable = 0;
  nlohmann::json ToJson() const;
};
JudgeSummary Summarize(const std::vector<JudgeVerdict>& verdicts);

}  // namespace medforge::eval
