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

#include <optional>
#include <string>
#include <vector>

namespace medforge::eval {

struct MultiChoiceItem {
  std::optional<char> predicted;  // empty when no valid letter was found
  char gold = 'A';
  int options_count = 4;
};

// Letter named by a free-text prediction: a bare letter, "(B)", "B)",
// "B.", "answer is B", "Answer: B", or the exact text of one option.
std::optional<char> ExtractLetter(const std::string& prediction, const std::vector<std::string>& options,
                                  int options_count = 4);

struct MultiChoiceScores {
  double accuracy = 0;  // all four in [0, 100]
  double macro_f1 = 0;
  double macro_recall = 0;
  double macro_precision = 0;
  std::size_t n = 0;
  std::size_t invalid = 0;
};

// Macro averages run over letters present in gold or (valid) predictions.
// Throws EmptyItemSet.
MultiChoiceScores ScoreMultiChoice(const std::vector<MultiChoiceItem>& items);

}  // namespace medforge::eval
