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

namespace medforge::figure {

struct LabelSpan {
  std::string label;       // "A", "b", ... case preserved
  std::string marker_raw;  // marker as it appears, with trailing whitespace
  std::string span_raw;    // text up to the next marker, untrimmed
  std::string span;        // span_raw trimmed and whitespace-normalized
};

struct PanelLabels {
  std::string preamble;  // text before the first marker
  std::vector<LabelSpan> entries;

  std::map<std::string, std::string> AsMap() const;
};

// Markers are single letters written "(A)", "A)", "A." or "a)". The
// parenthesized form is accepted after any whitespace; the bare forms only
// at the start of the caption or of a sentence. Labels must run in
// alphabetical sequence starting at A (either case), so stray tokens like
// "vitamin (D)" are not taken for markers. preamble followed by every
// marker_raw + span_raw reproduces the caption byte for byte.
PanelLabels ParsePanelLabels(std::string_view caption);

}  // namespace medforge::figure
