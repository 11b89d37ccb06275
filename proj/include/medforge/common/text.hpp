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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace medforge::text {

std::string Trim(std::string_view s);

// Collapses every whitespace run to one space and trims both ends.
std::string NormalizeWhitespace(std::string_view s);

// Drops anything between '<' and the matching '>'.
std::string StripTags(std::string_view s);

std::string ToLowerAscii(std::string_view s);

// Number of maximal non-whitespace runs. "T2-weighted" counts as one word.
std::size_t WordCount(std::string_view s);

std::vector<std::string> SplitWhitespace(std::string_view s);

// First `n` whitespace-delimited words, joined by single spaces.
std::string FirstWords(std::string_view s, std::size_t n);

// Sentence split on '.', '!' or '?' followed by whitespace or end of text.
// Sentences keep their terminal punctuation; empty pieces are dropped.
std::vector<std::string> SplitSentences(std::string_view s);

// Lowercased maximal alphanumeric runs. Bytes >= 0x80 count as word
// characters so UTF-8 words stay intact; all other bytes are boundaries.
std::vector<std::string> MetricTokens(std::string_view s);

bool StartsWith(std::string_view s, std::string_view prefix);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace medforge::text
