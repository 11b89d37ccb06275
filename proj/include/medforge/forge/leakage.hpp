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

namespace medforge::forge {

// Case-folded alphanumeric n-grams present in both texts, sorted, each
// joined by single spaces.
std::vector<std::string> SharedNgrams(std::string_view context, std::string_view answer, std::size_t n = 4);

// Removes every context sentence that overlaps an occurrence of a shared
// n-gram (an n-gram spanning a sentence boundary removes both sentences),
// repeating until nothing is shared. Remaining sentences are joined by one
// space.
std::string HardRedact(std::string_view context, std::string_view answer, std::size_t n = 4);

}  // namespace medforge::forge
