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

#include "medforge/figure/labels.hpp"

#include <cctype>

#include "medforge/common/text.hpp"

namespace medforge::figure {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsLetter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool AtSentenceStart(std::string_view s, std::size_t i) {
  std::size_t j = i;
  while (j > 0 && IsSpace(s[j - 1])) --j;
  if (j == 0) return true;
  if (j == i) return false;  // no whitespace before the marker
  char p = s[j - 1];
  return p == '.' || p == '!' || p == '?';
}

struct Marker {
  std::size_t begin = 0;
  std::size_t end = 0;  // past trailing whitespace
  char letter = 0;
};

// Marker starting at i, if any.
bool MatchMarker(std::string_view s, std::size_t i, Marker& m) {
  const std::size_t n = s.size();
  std::size_t after = 0;
  char letter = 0;
  if (s[i] == '(' && i + 2 < n && IsLetter(s[i + 1]) && s[i + 2] == ')') {
    if (i > 0 && !IsSpace(s[i - 1])) return false;
    letter = s[i + 1];
    after = i + 3;
  } else if (IsLetter(s[i]) && i + 1 < n && (s[i + 1] == ')' || s[i + 1] == '.')) {
    if (!AtSentenceStart(s, i)) return false;
    letter = s[i];
    after = i + 2;
  } else {
    return false;
  }
  if (after < n && !IsSpace(s[after])) return false;
  std::size_t end = after;
  while (end < n && IsSpace(s[end])) ++end;
  m = {i, end, letter};
  return true;
}

}  // namespace

std::map<std::string, std::string> PanelLabels::AsMap() const {
  std::map<std::string, std::string> out;
  for (const auto& e : entries) out.emplace(e.label, e.span);
  return out;
}

PanelLabels ParsePanelLabels(std::string_view caption) {
  std::vector<Marker> markers;
  char expected = 'a';
  for (std::size_t i = 0; i < caption.size(); ++i) {
    Marker m;
    if (!MatchMarker(caption, i, m)) continue;
    if (std::tolower(static_cast<unsigned char>(m.letter)) != expected) continue;
    markers.push_back(m);
    ++expected;
    i = m.end - 1;
  }

  PanelLabels out;
  if (markers.empty()) {
    out.preamble = std::string(caption);
    return out;
  }
  out.preamble = std::string(caption.substr(0, markers.front().begin));
  for (std::size_t k = 0; k < markers.size(); ++k) {
    const auto& m = markers[k];
    std::size_t span_end = k + 1 < markers.size() ? markers[k + 1].begin : caption.size();
    LabelSpan e;
    e.label = std::string(1, m.letter);
    e.marker_raw = std::string(caption.substr(m.begin, m.end - m.begin));
    e.span_raw = std::string(caption.substr(m.end, span_end - m.end));
    e.span = text::NormalizeWhitespace(e.span_raw);
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace medforge::figure
