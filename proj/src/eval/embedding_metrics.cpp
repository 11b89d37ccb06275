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

#include "medforge/eval/embedding_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "medforge/common/error.hpp"
#include "medforge/common/text.hpp"

namespace medforge::eval {

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::kMalformedReply, "embedding sizes differ: " + std::to_string(a.size()) + " vs " +
                                           std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<double> EmbedText(const std::string& text, gateway::ModelGateway& gw,
                              const gateway::EndpointConfig& endpoint) {
  gateway::ModelCall call;
  call.kind = gateway::CallKind::kEmbed;
  call.parts.push_back(gateway::Part::Text(text));
  auto res = gw.Invoke(endpoint, call);
  if (res.reply.vectors.size() != 1) {
    throw Error(Errc::kMalformedReply, "expected one embedding, got " + std::to_string(res.reply.vectors.size()));
  }
  return res.reply.vectors.front();
}

BertScore BertScoreFromVectors(const std::vector<std::vector<double>>& cand,
                               const std::vector<std::vector<double>>& ref) {
  BertScore s;
  if (cand.empty() || ref.empty()) return s;
  std::vector<double> best_c(cand.size(), 0.0), best_r(ref.size(), 0.0);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      const double sim = std::max(0.0, Cosine(cand[i], ref[j]));
      best_c[i] = std::max(best_c[i], sim);
      best_r[j] = std::max(best_r[j], sim);
    }
  }
  for (double v : best_c) s.precision += v;
  for (double v : best_r) s.recall += v;
  s.precision /= static_cast<double>(cand.size());
  s.recall /= static_cast<double>(ref.size());
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

BertScore BertScoreOf(const TextPair& pair, gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint) {
  auto embed_all = [&](const std::string& s) {
    std::vector<std::vector<double>> out;
    for (const auto& tok : text::MetricTokens(s)) out.push_back(EmbedText(tok, gw, endpoint));
    return out;
  };
  return BertScoreFromVectors(embed_all(pair.candidate), embed_all(pair.reference));
}

double Sts(const TextPair& pair, gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint) {
  const auto a = EmbedText(pair.candidate, gw, endpoint);
  const auto b = EmbedText(pair.reference, gw, endpoint);
  return std::max(0.0, Cosine(a, b)) * 100.0;
}

}  // namespace medforge::eval
