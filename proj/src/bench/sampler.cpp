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

#include "medforge/bench/sampler.hpp"

#include <cmath>
#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"

namespace medforge::bench {

int BenchmarkSpec::PoolSize() const {
  return static_cast<int>(std::ceil(static_cast<double>(quota) * oversample - 1e-9));
}

nlohmann::json BenchmarkSpec::ToJson() const {
  nlohmann::json cats = nlohmann::json::array();
  for (auto c : categories) cats.push_back(std::string(forge::TaskTypeName(c)));
  return {{"categories", cats}, {"quota", quota}, {"seed", seed}, {"oversample", oversample}};
}

BenchmarkSpec BenchmarkSpecFromJson(const nlohmann::json& j) {
  BenchmarkSpec spec;
  try {
    spec.quota = j.value("quota", spec.quota);
    spec.seed = j.value("seed", spec.seed);
    spec.oversample = j.value("oversample", spec.oversample);
    if (j.contains("categories")) {
      spec.categories.clear();
      for (const auto& c : j["categories"]) {
        auto t = forge::TaskTypeFromName(c.get<std::string>());
        if (!t) throw Error(Errc::kInvalidConfig, "unknown category '" + c.get<std::string>() + "'");
        spec.categories.push_back(*t);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidConfig, std::string("benchmark: ") + e.what());
  }
  if (spec.quota < 1) throw Error(Errc::kInvalidConfig, "benchmark quota must be >= 1");
  if (spec.oversample < 1.0) throw Error(Errc::kInvalidConfig, "benchmark oversample must be >= 1");
  if (spec.categories.empty()) throw Error(Errc::kInvalidConfig, "benchmark needs at least one category");
  return spec;
}

std::vector<forge::InstructionRecord> SampleCandidates(const std::vector<forge::InstructionRecord>& records,
                                                       const BenchmarkSpec& spec) {
  std::vector<forge::InstructionRecord> pool;
  nlohmann::json deficits = nlohmann::json::object();
  const auto want = static_cast<std::size_t>(spec.PoolSize());
  for (auto cat : spec.categories) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].task_type == cat) idx.push_back(i);
    }
    SeededRng rng(DeriveSeed(spec.seed, forge::TaskTypeName(cat)));
    rng.Shuffle(idx);
    std::set<std::string> figures;
    std::vector<std::size_t> chosen;
    for (std::size_t i : idx) {
      const auto& p = records[i].provenance;
      if (!figures.insert(p.article_id + "/" + p.figure_id).second) continue;
      chosen.push_back(i);
      if (chosen.size() == want) break;
    }
    if (chosen.size() < static_cast<std::size_t>(spec.quota)) {
      deficits[std::string(forge::TaskTypeName(cat))] = {{"available", chosen.size()}, {"required", spec.quota}};
    }
    for (std::size_t i : chosen) pool.push_back(records[i]);
  }
  if (!deficits.empty()) {
    std::string names;
    for (const auto& [k, v] : deficits.items()) names += (names.empty() ? "" : ", ") + k;
    throw Error(Errc::kInsufficientRecords, "too few distinct figures for: " + names, {{"deficits", deficits}});
  }
  return pool;
}

}  // namespace medforge::bench
