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

#include "medforge/forge/records.hpp"
#include "medforge/gateway/types.hpp"

namespace medforge::forge {

// Task marker names carried in the system prompts ("[task:NAME]").
std::string Stage4TaskName(TaskType t);

gateway::ModelCall Stage1Call(const std::string& inline_text, const std::string& caption,
                              const gateway::Sampling& sampling);
gateway::ModelCall Stage2Call(const std::string& caption, const std::string& summary,
                              const gateway::Sampling& sampling);
gateway::ModelCall Stage3Call(const std::string& panel_id, const std::string& sub_caption, const std::string& caption,
                              const std::string& summary, std::vector<std::uint8_t> crop_png,
                              const gateway::Sampling& sampling);

struct Stage4Input {
  TaskType type = TaskType::kTextOnly;
  const ContextBundle* bundle = nullptr;
  std::string target_panel;  // multi_image_single_subimage only
  int variant = 0;           // record index within the type
  std::vector<gateway::Part> images;
};
gateway::ModelCall Stage4Call(const Stage4Input& in, const gateway::Sampling& sampling);

gateway::ModelCall Stage5Call(const std::string& context, const std::string& question, const std::string& answer,
                              const std::vector<std::string>& leaked, const gateway::Sampling& sampling);

// Same call plus the previous reply and what was wrong with it.
gateway::ModelCall RepairCall(gateway::ModelCall call, const std::string& previous_reply, const std::string& problem);

std::string FormatKnowledge(const std::vector<KnowledgeNote>& notes);
std::string FormatDescriptions(const std::map<std::string, std::string>& descriptions);

}  // namespace medforge::forge
