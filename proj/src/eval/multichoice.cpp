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

#include "medforge/eval/multichoice.hpp"

#include <cctype>
#include <map>
#include <regex>
#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/text.hpp"

namespace medforge::eval {

namespace {

bool InRange(char c, int count) { return c >= 'A' && c < static_cast<char>('A' + count); }

}  // namespace

std::optional<char> ExtractLetter(const std::string& prediction, const std::vector<std::string>& options,
                                  int options_count) {
  const std::string p = text::Trim(prediction);
  if (p.empty()) return std::nullopt;
  auto up = [](char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); };
  if (p.size() == 1 && InRange(up(p[0]), options_count)) return up(p[0]);

  static const std::regex kLead(R"(^\(?([A-Za-z])[\).:](\s|$))");
  static const std::regex kStated(R"((?:answer|option)\s*(?:is|:)?\s*\(?([A-Za-z])\)?(?:[\s\.\),:]|$))",
                                  std::regex::icase);
  std::smatch m;
  if (std::regex_search(p, m, kLead) && InRange(up(m[1].str()[0]), options_count)) return up(m[1].str()[0]);
  if (std::regex_search(p, m, kStated) && InRange(up(m[1].str()[0]), options_count)) return up(m[1].str()[0]);

  const std::string lower = text::ToLowerAscii(text::NormalizeWhitespace(p));
  for (std::size_t i = 0; i < options.size() && static_cast<int>(i) < options_count; ++i) {
    if (text::ToLowerAscii(text::NormalizeWhitespace(options[i])) == lower) return static_cast<char>('A' + i);
  }
  return std::nullopt;
}

MultiChoiceScores ScoreMultiChoice(const std::vector<MultiChoiceItem>& items) {
  if (items.empty()) throw Error(Errc::kEmptyItemSet, "no multi-choice items to score");
  struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<char, Counts> classes;
  MultiChoiceScores s;
  s.n = items.size();
  std::size_t correct = 0;
  for (const auto& it : items) {
    if (!InRange(it.gold, it.options_count)) {
      throw Error(Errc::kInvalidArgument, std::string("gold letter '") + it.gold + "' out of range");
    }
    classes[it.gold];
    const bool valid = it.predicted && InRange(*it.predicted, it.options_count);
    if (!valid) {
      ++s.invalid;
      ++classes[it.gold].fn;
      continue;
    }
    if (*it.predicted == it.gold) {
      ++correct;
      ++classes[it.gold].tp;
    } else {
      ++classes[*it.predicted].fp;
      ++classes[it.gold].fn;
    }
  }
  double sp = 0, sr = 0, sf = 0;
  for (const auto& [letter, c] : classes) {
    const double p = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
    const double r = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
    sp += p;
    sr += r;
    sf += p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  }
  const double k = static_cast<double>(classes.size());
  s.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(items.size());
  s.macro_precision = 100.0 * sp / k;
  s.macro_recall = 100.0 * sr / k;
  s.macro_f1 = 100.0 * sf / k;
  return s;
}

}  // namespace medforge::eval
