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
#include <string>
#include <vector>

#include "medforge/forge/pipeline.hpp"
#include "medforge/forge/records.hpp"

namespace medforge::testing {

// stage1..stage5 served by the mock backend.
forge::ForgeConfig MockForgeConfig(std::uint64_t seed = 7, std::size_t workers = 1);
gateway::EndpointConfig MockEndpoint(const std::string& id);

// A plausible record of `type` on figure <article>/<figure>.
forge::InstructionRecord FakeRecord(forge::TaskType type, const std::string& article, const std::string& figure,
                                    int n = 0);

// `per_category` records per task type, each on its own figure.
std::vector<forge::InstructionRecord> BalancedRecords(int per_category);

}  // namespace medforge::testing
