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

#include "medforge/bench/export.hpp"

#include <algorithm>

#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/quality/ratings.hpp"

namespace medforge::bench {

namespace {

nlohmann::json QualityJson(const std::vector<CurationItem>& items) {
  std::map<std::pair<std::string, std::string>, quality::RatingRecord> latest;
  for (const auto& item : items) {
    for (const auto& v : item.history) {
      if (!v.scores) continue;
      quality::RatingRecord r;
      r.sample_id = item.item_id;
      r.stage = 5;
      r.rater_id = v.rater_id;
      r.correctness = v.scores->correctness;
      r.completeness = v.scores->completeness;
      r.clarity = v.scores->clarity;
      latest[{item.item_id, v.rater_id}] = r;
    }
  }
  std::vector<quality::RatingRecord> ratings;
  for (auto& [k, r] : latest) ratings.push_back(r);
  if (ratings.empty()) return nullptr;
  try {
    return quality::ComputeAgreementReport(ratings).ToJson();
  } catch (const Error& e) {
    return {{"error", std::string(ErrcName(e.code()))}, {"message", e.what()}};
  }
}

}  // namespace

nlohmann::json CurationStats(const std::vector<CurationItem>& items) {
  nlohmann::json states = {{"pending", 0}, {"in_review", 0}, {"conflict", 0}, {"accepted", 0}, {"rejected", 0}};
  std::map<std::string, std::map<std::string, int>> by_cat;
  for (const auto& item : items) {
    const std::string s(ItemStateName(item.state));
    states[s] = states[s].get<int>() + 1;
    ++by_cat[std::string(forge::TaskTypeName(item.record.task_type))][s];
  }
  nlohmann::json agreement = nullptr;
  try {
    agreement = CurationAgreement(items);
  } catch (const Error&) {
  }
  return {{"items", items.size()},
          {"states", states},
          {"by_category", by_cat},
          {"curation_agreement", agreement},
          {"quality", QualityJson(items)}};
}

ExportResult ExportBenchmark(const std::vector<CurationItem>& items, const BenchmarkSpec& spec,
                             const std::filesystem::path& out_dir, const std::string& source_dataset_sha256) {
  std::vector<const CurationItem*> chosen;
  nlohmann::json deficits = nlohmann::json::object(), counts = nlohmann::json::object();
  for (auto cat : spec.categories) {
    std::vector<const CurationItem*> accepted;
    for (const auto& item : items) {
      if (item.record.task_type == cat && item.state == ItemState::kAccepted) accepted.push_back(&item);
    }
    std::stable_sort(accepted.begin(), accepted.end(),
                     [](const CurationItem* a, const CurationItem* b) { return *a->accepted_seq < *b->accepted_seq; });
    const std::string name(forge::TaskTypeName(cat));
    if (accepted.size() < static_cast<std::size_t>(spec.quota)) {
      deficits[name] = {{"accepted", accepted.size()},
                        {"required", spec.quota},
                        {"missing", spec.quota - static_cast<int>(accepted.size())}};
      continue;
    }
    accepted.resize(static_cast<std::size_t>(spec.quota));
    counts[name] = spec.quota;
    chosen.insert(chosen.end(), accepted.begin(), accepted.end());
  }
  if (!deficits.empty()) {
    std::string names;
    for (const auto& [k, v] : deficits.items()) names += (names.empty() ? "" : ", ") + k;
    throw Error(Errc::kQuotaUnmet, "accepted items below quota for: " + names, {{"deficits", deficits}});
  }

  std::string body;
  nlohmann::json ids = nlohmann::json::array();
  for (const auto* item : chosen) {
    body += forge::ToJsonLine(item->record);
    ids.push_back({{"item_id", item->item_id}, {"record_id", item->record.record_id}});
  }
  std::filesystem::create_directories(out_dir);
  ExportResult result;
  result.dataset = out_dir / "benchmark.jsonl";
  result.manifest = out_dir / "manifest.json";
  result.total = chosen.size();
  files::WriteAtomic(result.dataset, body);
  result.manifest_json = {{"spec", spec.ToJson()},
                          {"total", chosen.size()},
                          {"counts", counts},
                          {"source_dataset_sha256", source_dataset_sha256},
                          {"benchmark_sha256", Sha256Hex(body)},
                          {"items", ids},
                          {"curation", CurationStats(items)}};
  files::WriteAtomic(result.manifest, result.manifest_json.dump(2) + "\n");
  return result;
}

}  // namespace medforge::bench
