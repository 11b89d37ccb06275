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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/gateway/types.hpp"

namespace medforge::gateway {

// Fixture templates are keyed by the "[task:NAME]" marker found in the
// system prompt. Directives, expanded against the <<NAME>>...<</NAME>>
// sections of the user text:
//   {digest}              first 12 hex chars of the cache key
//   {section:A|B}         first non-empty section among A, B
//   {words:A|B:N}         its first N words
//   {sentences:A|B:N}     its first N sentences
//   {term:A|B:i}          i-th distinct word of 6+ letters (1-based), "" if none
//   {judge}               verdict JSON comparing RESPONSE_A/RESPONSE_B to REFERENCE
//   {tag:modality}        keyword tag of CAPTION (also {tag:anatomy})
//   {{ and }}             literal braces
struct MockOptions {
  std::map<std::string, std::string> fixtures;  // merged over DefaultFixtures()
  std::map<std::string, std::vector<double>> embeddings;  // exact text -> vector
  int embedding_dim = 64;

  static std::map<std::string, std::string> DefaultFixtures();
  static MockOptions FromJson(const nlohmann::json& j);
};

class MockBackend {
 public:
  explicit MockBackend(MockOptions options = {});

  // Pure function of (call, digest).
  Reply Complete(const ModelCall& call, const std::string& digest) const;

  const MockOptions& options() const { return options_; }

 private:
  MockOptions options_;
};

// Helpers shared with the prompt builders and tests.
std::string TaskMarker(std::string_view task);  // "[task:NAME]"
std::string Section(std::string_view name, std::string_view body);  // "<<NAME>>\nbody\n<</NAME>>\n"
std::string ExtractSection(std::string_view text, std::string_view name);  // trimmed, "" if absent

// First line of every mock reply; parsers skip it.
inline constexpr std::string_view kMockReplyPrefix = "MOCK-REPLY ";

std::string KeywordModality(std::string_view caption);
std::string KeywordAnatomy(std::string_view caption);

}  // namespace medforge::gateway
