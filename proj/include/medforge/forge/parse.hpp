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
#include <utility>
#include <vector>

#include "medforge/forge/records.hpp"

namespace medforge::forge {

// (TAG, value) pairs in reply order. A tag line is "TAG: value" with TAG
// from `tags` (case-insensitive, leading markdown '*', '#', '-' ignored);
// following untagged lines continue the value. Mock header lines are skipped.
std::vector<std::pair<std::string, std::string>> TaggedBlocks(const std::string& reply,
                                                              const std::vector<std::string>& tags);

std::optional<std::string> ParseSummary(const std::string& reply);
std::optional<std::string> ParseDescription(const std::string& reply);
std::optional<std::string> ParseRefinedContext(const std::string& reply);

// Concepts deduplicated case-insensitively, first occurrence kept. Empty
// when the reply has no complete CONCEPT/EXPLANATION pair.
std::vector<KnowledgeNote> ParseKnowledge(const std::string& reply);

struct QaDraft {
  std::string context;
  std::string question;
  std::string answer;
  std::vector<std::string> options;  // multi-choice: 4 options, answer is one of them
};

// Returns the draft or a description of what is wrong.
struct QaParse {
  std::optional<QaDraft> draft;
  std::string problem;
};
QaParse ParseQa(const std::string& reply, bool multi_choice);

}  // namespace medforge::forge
