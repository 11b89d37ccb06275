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

#include "medforge/eval/text_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "medforge/common/text.hpp"

namespace medforge::eval {

namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> Counts(const std::vector<std::string>& t, std::size_t n) {
  std::map<Gram, std::size_t> out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) ++out[Gram(t.begin() + i, t.begin() + i + n)];
  return out;
}

}  // namespace

double Bleu4Tokens(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  if (cand.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto c = Counts(cand, n);
    const auto r = Counts(ref, n);
    std::size_t matches = 0;
    for (const auto& [g, k] : c) {
      auto it = r.find(g);
      if (it != r.end()) matches += std::min(k, it->second);
    }
    const std::size_t total = cand.size() >= n ? cand.size() - n + 1 : 0;
    const double p = matches == 0 ? 1.0 / static_cast<double>(total + 1)
                                  : static_cast<double>(matches) / static_cast<double>(total);
    log_sum += std::log(p) / 4.0;
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum);
}

double Bleu4(const TextPair& pair) {
  return Bleu4Tokens(text::MetricTokens(pair.candidate), text::MetricTokens(pair.reference));
}

std::size_t LcsLength(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeL RougeLScore(const TextPair& pair) {
  const auto c = text::MetricTokens(pair.candidate);
  const auto r = text::MetricTokens(pair.reference);
  RougeL out;
  if (c.empty() || r.empty()) return out;
  const double lcs = static_cast<double>(LcsLength(c, r));
  out.precision = lcs / static_cast<double>(c.size());
  out.recall = lcs / static_cast<double>(r.size());
  out.f = out.precision + out.recall > 0 ? 2 * out.precision * out.recall / (out.precision + out.recall) : 0.0;
  return out;
}

std::vector<double> BatchBleu4Serial(const std::vector<TextPair>& pairs) {
  std::vector<double> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = Bleu4(pairs[i]);
  return out;
}

std::vector<double> BatchBleu4(const std::vector<TextPair>& pairs) {
  std::vector<double> out(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16) if (n > 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = Bleu4(pairs[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<RougeL> BatchRougeLSerial(const std::vector<TextPair>& pairs) {
  std::vector<RougeL> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = RougeLScore(pairs[i]);
  return out;
}

std::vector<RougeL> BatchRougeL(const std::vector<TextPair>& pairs) {
  std::vector<RougeL> out(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16) if (n > 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = RougeLScore(pairs[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace medforge::eval
