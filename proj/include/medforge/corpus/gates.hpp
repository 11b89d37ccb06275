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

#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "medforge/corpus/article.hpp"

namespace medforge::corpus {

enum class GateRule { kLicense, kCompoundCaptionLength, kSubCaptionLength, kMedicalRatio };

std::string_view GateRuleName(GateRule rule);  // "license", "compound_caption_length", ...

struct GateDecision {
  bool passed = false;
  GateRule rule = GateRule::kLicense;
  std::string detail;  // always set; says why on failure

  bool operator==(const GateDecision&) const = default;
};

nlohmann::json ToJson(const GateDecision& d);

struct GateConfig {
  std::set<std::string> license_allowlist = {"CC BY", "CC BY-SA", "CC0", "CC BY-NC"};
  std::size_t caption_words_exceed = 50;  // caption must have strictly more
  std::size_t sub_caption_min_words = 10; // each present sub-caption needs at least this many
  double medical_ratio_exceed = 0.9;      // medical area fraction must be strictly greater
};

// Exact match after trimming and ASCII case-folding both sides.
// Throws InvalidArgument on an empty allowlist.
GateDecision FilterLicense(const ArticlePackage& pkg, const std::set<std::string>& allowlist);

// Compound caption first, then every non-empty sub-caption. Empty
// sub-caption strings count as absent.
GateDecision ApplyCaptionGate(const FigureEntry& fig, std::size_t caption_words_exceed = 50,
                              std::size_t sub_caption_min_words = 10);

GateDecision ApplyMedicalGate(double ratio, double exceed = 0.9);

}  // namespace medforge::corpus
