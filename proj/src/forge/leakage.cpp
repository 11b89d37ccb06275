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

#include "medforge/forge/leakage.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "medforge/common/text.hpp"

namespace medforge::forge {

namespace {

struct Token {
  std::string text;
  std::size_t begin;
  std::size_t end;
};

bool IsWordByte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::vector<Token> Tokens(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!IsWordByte(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    const std::size_t b = i;
    while (i < s.size() && IsWordByte(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back({text::ToLowerAscii(s.substr(b, i - b)), b, i});
  }
  return out;
}

std::string Gram(const std::vector<Token>& t, std::size_t i, std::size_t n) {
  std::string g = t[i].text;
  for (std::size_t k = 1; k < n; ++k) g += " " + t[i + k].text;
  return g;
}

std::set<std::string> Grams(const std::vector<Token>& t, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; n > 0 && i + n <= t.size(); ++i) out.insert(Gram(t, i, n));
  return out;
}

struct Span {
  std::size_t begin;
  std::size_t end;
};

// Same boundary rule as text::SplitSentences, keeping byte spans.
std::vector<Span> SentenceSpans(std::string_view s) {
  std::vector<Span> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::size_t b = start, e = end;
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (b < e) out.push_back({b, e});
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1])))) {
      flush(i + 1);
      start = i + 1;
    }
  }
  flush(s.size());
  return out;
}

}  // namespace

std::vector<std::string> SharedNgrams(std::string_view context, std::string_view answer, std::size_t n) {
  const auto a = Grams(Tokens(context), n);
  const auto b = Grams(Tokens(answer), n);
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string HardRedact(std::string_view context, std::string_view answer, std::size_t n) {
  const auto answer_grams = Grams(Tokens(answer), n);
  std::string current(context);
  for (;;) {
    const auto tokens = Tokens(current);
    const auto spans = SentenceSpans(current);
    std::vector<bool> drop(spans.size(), false);
    bool any = false;
    for (std::size_t i = 0; n > 0 && i + n <= tokens.size(); ++i) {
      if (!answer_grams.count(Gram(tokens, i, n))) continue;
      any = true;
      const std::size_t b = tokens[i].begin, e = tokens[i + n - 1].end;
      for (std::size_t s = 0; s < spans.size(); ++s) {
        if (spans[s].begin < e && b < spans[s].end) drop[s] = true;
      }
    }
    if (!any) return current;
    std::vector<std::string> kept;
    for (std::size_t s = 0; s < spans.size(); ++s) {
      if (!drop[s]) kept.emplace_back(current.substr(spans[s].begin, spans[s].end - spans[s].begin));
    }
    current = text::Join(kept, " ");
  }
}

}  // namespace medforge::forge
