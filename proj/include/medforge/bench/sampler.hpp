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

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/forge/records.hpp"

namespace medforge::bench {

struct BenchmarkSpec {
  std::vector<forge::TaskType> categories{std::begin(forge::kAllTaskTypes), std::end(forge::kAllTaskTypes)};
  int quota = 50;  // per category
  std::uint64_t seed = 0;
  double oversample = 1.5;  // candidate pool = ceil(quota * oversample)

  int PoolSize() const;
  int Total() const { return quota * static_cast<int>(categories.size()); }
  nlohmann::json ToJson() const;
};

BenchmarkSpec BenchmarkSpecFromJson(const nlohmann::json& j);

// Seeded shuffle per category keeping at most one record per figure. The
// result is grouped by category in spec order. Throws InsufficientRecords
// naming every short category when fewer than `quota` figures are available.
// A category with fewer than PoolSize() figures yields all of them.
std::vector<forge::InstructionRecord> SampleCandidates(const std::vector<forge::InstructionRecord>& records,
                                                       const BenchmarkSpec& spec);

}  // namespace medforge::bench
