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

#include "medforge/eval/judge.hpp"

#include "medforge/common/rng.hpp"
#include "medforge/common/text.hpp"
#include "medforge/gateway/mock_backend.hpp"

namespace medforge::eval {

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kWin: return "win";
    case Outcome::kLose: return "lose";
    case Outcome::kTie: return "tie";
  }
  return "tie";
}

bool JudgeSwaps(std::uint64_t ab_seed) { return (SeededRng(ab_seed).Next() & 1u) != 0; }

gateway::ModelCall JudgeCall(const std::string& reference, const std::string& first, const std::string& second,
                             const gateway::Sampling& sampling) {
  gateway::ModelCall c;
  c.kind = gateway::CallKind::kChat;
  c.system_prompt =
      "You are an expert physician grading answers to a medical question.\n"
      "Task identifier: [task:judge]\n"
      "Compare RESPONSE_A and RESPONSE_B against the REFERENCE answer. Judge medical correctness first, then "
      "completeness, then clarity. Ignore response length and the order in which the responses appear. If "
      "neither is better, call it a tie.\n"
      "Reply with a strict JSON object and nothing else:\n"
      "{\"winner\": \"A\" | \"B\" | \"tie\", \"rationale\": \"<one or two sentences>\"}";
  c.parts.push_back(gateway::Part::Text(gateway::Section("REFERENCE", reference) +
                                        gateway::Section("RESPONSE_A", first) +
                                        gateway::Section("RESPONSE_B", second)));
  c.sampling = sampling;
  return c;
}

std::optional<std::pair<std::string, std::string>> ParseJudgeReply(const std::string& reply) {
  std::string body = reply;
  if (text::StartsWith(body, gateway::kMockReplyPrefix)) {
    const auto nl = body.find('\n');
    body = nl == std::string::npos ? std::string() : body.substr(nl + 1);
  }
  body = text::Trim(body);
  if (text::StartsWith(body, "```")) {
    const auto first_nl = body.find('\n');
    const auto fence = body.rfind("```");
    if (first_nl == std::string::npos || fence <= first_nl) return std::nullopt;
    body = text::Trim(body.substr(first_nl + 1, fence - first_nl - 1));
  }
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("winner") || !j["winner"].is_string()) return std::nullopt;
  std::string w = text::ToLowerAscii(text::Trim(j["winner"].get<std::string>()));
  if (w == "a") {
    w = "A";
  } else if (w == "b") {
    w = "B";
  } else if (w != "tie") {
    return std::nullopt;
  }
  std::string rationale;
  if (j.contains("rationale")) {
    if (!j["rationale"].is_string()) return std::nullopt;
    rationale = j["rationale"].get<std::string>();
  }
  return std::make_pair(w, rationale);
}

JudgeVerdict JudgePairwise(const std::string& reference, const std::string& output_a, const std::string& output_b,
                           gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint,
                           std::uint64_t ab_seed, const gateway::Sampling& sampling) {
  JudgeVerdict v;
  v.swapped = JudgeSwaps(ab_seed);
  const auto call = JudgeCall(reference, v.swapped ? output_b : output_a, v.swapped ? output_a : output_b, sampling);
  auto res = gw.Invoke(endpoint, call);
  v.digest = res.digest;
  auto parsed = ParseJudgeReply(res.reply.text);
  if (!parsed) {
    auto repair = call;
    repair.parts.push_back(gateway::Part::Text(
        gateway::Section("PREVIOUS_REPLY", res.reply.text) +
        gateway::Section("PROBLEM", "The reply was not the required JSON object. Reply with the JSON object only.")));
    auto retry = gw.Invoke(endpoint, repair);
    v.digest = retry.digest;
    parsed = ParseJudgeReply(retry.reply.text);
  }
  if (!parsed) {
    v.outcome = Outcome::kTie;
    v.rationale = "unparseable";
    return v;
  }
  v.rationale = parsed->second;
  const std::string& w = parsed->first;
  if (w == "tie") {
    v.outcome = Outcome::kTie;
  } else {
    const bool first_won = w == "A";
    v.outcome = first_won != v.swapped ? Outcome::kWin : Outcome::kLose;
  }
  return v;
}

nlohmann::json JudgeSummary::ToJson() const {
  return {{"n", n},           {"wins", wins},         {"losses", losses},   {"ties", ties},
          {"win_pct", win_pct}, {"lose_pct", lose_pct}, {"tie_pct", tie_pct}, {"unparseable", unparseable}};
}

JudgeSummary Summarize(const std::vector<JudgeVerdict>& verdicts) {
  JudgeSummary s;
  s.n = verdicts.size();
  for (const auto& v : verdicts) {
    if (v.outcome == Outcome::kWin) ++s.wins;
    if (v.outcome == Outcome::kLose) ++s.losses;
    if (v.outcome == Outcome::kTie) ++s.ties;
    if (v.outcome == Outcome::kTie && v.rationale == "unparseable") ++s.unparseable;
  }
  if (s.n > 0) {
    const double n = static_cast<double>(s.n);
    s.win_pct = 100.0 * static_cast<double>(s.wins) / n;
    s.lose_pct = 100.0 * static_cast<double>(s.losses) / n;
    s.tie_pct = 100.0 * static_cast<double>(s.ties) / n;
  }
  return s;
}

}  // namespace medforge::eval
