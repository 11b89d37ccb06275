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

#include <string>
#include <vector>

namespace medforge::eval {

struct TextPair {
  std::string candidate;
  std::string reference;
};

// Sentence BLEU with up to 4-grams, uniform weights, one reference.
// Orders with zero matches use (0 + 1) / (total + 1). Empty candidate -> 0.
// Not symmetric in its arguments.
double Bleu4(const TextPair& pair);

struct RougeL {
  double precision = 0;
  double recall = 0;
  double f = 0;
};
// Token LCS with beta = 1. Empty side -> all zeros.
RougeL RougeLScore(const TextPair& pair);

// Token-level helpers on text::MetricTokens output.
double Bleu4Tokens(const std::vector<std::string>& cand, const std::vector<std::string>& ref);
std::size_t LcsLength(const std::vector<std::string>& a, const std::vector<std::string>& b);

// OpenMP batch kernels and their serial references.
std::vector<double> BatchBleu4(const std::vector<TextPair>& pairs);
std::vector<double> BatchBleu4Serial(const std::vector<TextPair>& pairs);
std::vector<RougeL> BatchRougeL(const std::vector<TextPair>& pairs);
std::vector<RougeL> BatchRougeLSerial(const std::vector<TextPair>& pairs);

}  // namespace medforge::eval
