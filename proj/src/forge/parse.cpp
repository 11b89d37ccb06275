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

#include "medforge/forge/parse.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "medforge/common/text.hpp"
#include "medforge/gateway/mock_backend.hpp"

namespace medforge::forge {

namespace {

std::string Upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// "TAG: rest" -> (TAG, rest) when TAG is known.
std::optional<std::pair<std::string, std::string>> TagLine(const std::string& line,
                                                           const std::vector<std::string>& tags) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == '*' || line[i] == '#' || line[i] == '-' ||
                             std::isspace(static_cast<unsigned char>(line[i])))) {
    ++i;
  }
  const auto colon = line.find(':', i);
  if (colon == std::string::npos) return std::nullopt;
  std::string tag = line.substr(i, colon - i);
  while (!tag.empty() && (tag.back() == '*' || tag.back() == ' ')) tag.pop_back();
  tag = Upper(tag);
  for (const auto& t : tags) {
    if (t == tag) {
      std::string rest = line.substr(colon + 1);
      std::size_t b = 0;
      while (b < rest.size() && (rest[b] == '*' || rest[b] == ' ')) ++b;
      return std::make_pair(t, text::Trim(rest.substr(b)));
    }
  }
  return std::nullopt;
}

std::optional<std::string> Single(const std::string& reply, const std::string& tag) {
  for (auto& [t, v] : TaggedBlocks(reply, {tag})) {
    if (!v.empty()) return v;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> TaggedBlocks(const std::string& reply,
                                                              const std::vector<std::string>& tags) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(reply);
  std::string line;
  bool open = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::StartsWith(line, gateway::kMockReplyPrefix)) continue;
    if (auto tl = TagLine(line, tags)) {
      out.push_back(std::move(*tl));
      open = true;
    } else if (open) {
      if (text::Trim(line).empty()) {
        open = out.back().second.empty();
        continue;
      }
      auto& v = out.back().second;
      if (!v.empty()) v.push_back('\n');
      v += text::Trim(line);
    }
  }
  return out;
}

std::optional<std::string> ParseSummary(const std::string& reply) { return Single(reply, "SUMMARY"); }
std::optional<std::string> ParseDescription(const std::string& reply) { return Single(reply, "DESCRIPTION"); }
std::optional<std::string> ParseRefinedContext(const std::string& reply) {
  for (auto& [t, v] : TaggedBlocks(reply, {"CONTEXT"})) return v;
  return std::nullopt;
}

std::vector<KnowledgeNote> ParseKnowledge(const std::string& reply) {
  std::vector<KnowledgeNote> notes;
  std::set<std::string> seen;
  std::optional<std::string> name;
  for (auto& [tag, value] : TaggedBlocks(reply, {"CONCEPT", "EXPLANATION"})) {
    if (tag == "CONCEPT") {
      name = value;
      continue;
    }
    if (!name || name->empty() || value.empty()) {
      name.reset();
      continue;
    }
    if (seen.insert(text::ToLowerAscii(*name)).second) notes.push_back({*name, value});
    name.reset();
  }
  return notes;
}

QaParse ParseQa(const std::string& reply, bool multi_choice) {
  QaParse out;
  QaDraft d;
  std::string options_block;
  bool have_context = false, have_question = false, have_answer = false, have_options = false;
  for (auto& [tag, value] : TaggedBlocks(reply, {"CONTEXT", "QUESTION", "ANSWER", "OPTIONS"})) {
    if (tag == "CONTEXT" && !have_context) {
      d.context = value;
      have_context = true;
    } else if (tag == "QUESTION" && !have_question) {
      d.question = value;
      have_question = true;
    } else if (tag == "ANSWER" && !have_answer) {
      d.answer = value;
      have_answer = true;
    } else if (tag == "OPTIONS" && !have_options) {
      options_block = value;
      have_options = true;
    }
  }
  if (!have_context) out.problem = "missing CONTEXT line.";
  else if (d.question.empty()) out.problem = "missing or empty QUESTION line.";
  else if (d.answer.empty()) out.problem = "missing or empty ANSWER line.";
  if (!out.problem.empty()) return out;
  if (!multi_choice) {
    out.draft = std::move(d);
    return out;
  }

  std::vector<std::string> opts(4);
  std::vector<bool> seen(4, false);
  std::istringstream in(options_block);
  std::string line;
  while (std::getline(in, line)) {
    line = text::Trim(line);
    if (line.size() < 2) continue;
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(line[0])));
    if (letter < 'A' || letter > 'D' || (line[1] != ')' && line[1] != '.' && line[1] != ':')) continue;
    const std::size_t i = static_cast<std::size_t>(letter - 'A');
    if (seen[i]) continue;
    seen[i] = true;
    opts[i] = text::Trim(line.substr(2));
  }
  std::set<std::string> distinct;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!seen[i] || opts[i].empty()) {
      out.problem = std::string("option ") + static_cast<char>('A' + i) + " is missing or empty.";
      return out;
    }
    distinct.insert(text::ToLowerAscii(opts[i]));
  }
  if (distinct.size() != 4) {
    out.problem = "options are not distinct.";
    return out;
  }
  std::optional<std::size_t> correct;
  const std::string a = text::Trim(d.answer);
  const char first = a.empty() ? '\0' : static_cast<char>(std::toupper(static_cast<unsigned char>(a[0])));
  if (first >= 'A' && first <= 'D' && (a.size() == 1 || a[1] == ')' || a[1] == '.' || a[1] == ':')) {
    correct = static_cast<std::size_t>(first - 'A');
  } else {
    for (std::size_t i = 0; i < 4; ++i) {
      if (text::ToLowerAscii(opts[i]) == text::ToLowerAscii(a)) correct = i;
    }
  }
  if (!correct) {
    out.problem = "ANSWER does not name one of the options.";
    return out;
  }
  d.answer = opts[*correct];
  d.options = std::move(opts);
  out.draft = std::move(d);
  return out;
}

}  // namespace medforge::forge
