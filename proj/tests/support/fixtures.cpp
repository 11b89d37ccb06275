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

#include "fixtures.hpp"

namespace medforge::testing {

gateway::EndpointConfig MockEndpoint(const std::string& id) {
  gateway::EndpointConfig c;
  c.endpoint_id = id;
  c.model_name = "mock";
  c.backend = "mock";
  return c;
}

forge::ForgeConfig MockForgeConfig(std::uint64_t seed, std::size_t workers) {
  forge::ForgeConfig c;
  for (const char* role : {"stage1", "stage2", "stage3", "stage4", "stage5"}) {
    c.endpoints[role] = MockEndpoint(std::string("mock-") + role);
  }
  c.seed = seed;
  c.workers = workers;
  return c;
}

forge::InstructionRecord FakeRecord(forge::TaskType type, const std::string& article, const std::string& figure,
                                    int n) {
  forge::InstructionRecord r;
  r.task_type = type;
  r.record_id = article + "/" + figure + "/" + std::string(forge::TaskTypeName(type)) + "/" + std::to_string(n);
  const std::string dir = "images/" + article + "/" + figure + "/";
  if (forge::IsMultiImage(type)) {
    r.images = {dir + "A.png", dir + "B.png"};
  } else {
    r.images = {dir + "figure.png"};
  }
  r.context = "Contrast enhanced imaging of case " + figure + ".";
  r.question = "What does sub-image A show?";
  r.answer = "Marked enhancement of the lesion in " + figure + ".";
  if (type == forge::TaskType::kMultiChoice) {
    r.options = std::vector<std::string>{r.answer, "Normal tissue", "Calcified nodule", "Cystic mass"};
    r.correct_option = "A";
  }
  r.provenance.article_id = article;
  r.provenance.figure_id = figure;
  r.provenance.panel_ids = {"A", "B"};
  return r;
}

std::vector<forge::InstructionRecord> BalancedRecords(int per_category) {
  std::vector<forge::InstructionRecord> out;
  for (auto t : forge::kAllTaskTypes) {
    for (int i = 0; i < per_category; ++i) {
      out.push_back(FakeRecord(t, "PMC" + std::to_string(100000 + i), "F" + std::string(forge::TaskTypeName(t))));
    }
  }
  return out;
}

}  // namespace medforge::testing
