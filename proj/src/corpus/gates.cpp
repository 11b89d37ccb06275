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

#include "medforge/corpus/gates.hpp"

#include <cstdio>

#include "medforge/common/error.hpp"
#include "medforge/common/text.hpp"

namespace medforge::corpus {

std::string_view GateRuleName(GateRule rule) {
  switch (rule) {
    case GateRule::kLicense: return "license";
    case GateRule::kCompoundCaptionLength: return "compound_caption_length";
    case GateRule::kSubCaptionLength: return "sub_caption_length";
    case GateRule::kMedicalRatio: return "medical_ratio";
  }
  return "unknown";
}

nlohmann::json ToJson(const GateDecision& d) {
  return {{"passed", d.passed}, {"rule", std::string(GateRuleName(d.rule))}, {"detail", d.detail}};
}

GateDecision FilterLicense(const ArticlePackage& pkg, const std::set<std::string>& allowlist) {
  if (allowlist.empty()) throw Error(Errc::kInvalidArgument, "license allowlist is empty");
  const std::string tag = text::ToLowerAscii(text::Trim(pkg.license));
  for (const auto& allowed : allowlist) {
    if (!tag.empty() && tag == text::ToLowerAscii(text::Trim(allowed))) {
      return {true, GateRule::kLicense, "license '" + allowed + "' allowed"};
    }
  }
  return {false, GateRule::kLicense,
          pkg.license.empty() ? "no license tag" : "license '" + pkg.license + "' not in allowlist"};
}

GateDecision ApplyCaptionGate(const FigureEntry& fig, std::size_t caption_words_exceed,
                              std::size_t sub_caption_min_words) {
  const std::size_t words = text::WordCount(fig.caption);
  if (words <= caption_words_exceed) {
    return {false, GateRule::kCompoundCaptionLength,
            "caption has " + std::to_string(words) + " words; needs more than " +
                std::to_string(caption_words_exceed)};
  }
  for (const auto& [label, sub] : fig.sub_captions) {
    if (text::Trim(sub).empty()) continue;
    const std::size_t n = text::WordCount(sub);
    if (n < sub_caption_min_words) {
      return {false, GateRule::kSubCaptionLength,
              "sub-caption " + label + " has " + std::to_string(n) + " words; needs at least " +
                  std::to_string(sub_caption_min_words)};
    }
  }
  return {true, GateRule::kCompoundCaptionLength, "caption has " + std::to_string(words) + " words"};
}

GateDecision ApplyMedicalGate(double ratio, double exceed) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "medical area fraction %.4f (needs > %.4f)", ratio, exceed);
  return {ratio > exceed, GateRule::kMedicalRatio, buf};
}

}  // namespace medforge::corpus
