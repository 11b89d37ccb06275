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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/bench/curation.hpp"
#include "medforge/bench/sampler.hpp"

namespace medforge::bench {

struct ExportResult {
  std::filesystem::path dataset;   // benchmark.jsonl
  std::filesystem::path manifest;  // manifest.json
  std::size_t total = 0;
  nlohmann::json manifest_json;
};

// Takes the earliest-accepted `quota` items per category. Throws QuotaUnmet
// with per-category deficits. Records keep the forge schema.
ExportResult ExportBenchmark(const std::vector<CurationItem>& items, const BenchmarkSpec& spec,
                             const std::filesystem::path& out_dir, const std::string& source_dataset_sha256);

// Curation summary used by the manifest and the review API.
nlohmann::json CurationStats(const std::vector<CurationItem>& items);

}  // namespace medforge::bench
