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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace medforge::forge {

enum class TaskType {
  kMultiImageMultiSubimage,
  kMultiImageSingleSubimage,
  kMultiImageSpatial,
  kSingleImage,
  kTextOnly,
  kMultiChoice,
};

inline constexpr TaskType kAllTaskTypes[] = {
    TaskType::kMultiImageMultiSubimage, TaskType::kMultiImageSingleSubimage, TaskType::kMultiImageSpatial,
    TaskType::kSingleImage,             TaskType::kTextOnly,                 TaskType::kMultiChoice,
};

std::string_view TaskTypeName(TaskType t);  // "multi_image_spatial", ...
std::optional<TaskType> TaskTypeFromName(std::string_view name);
bool IsMultiImage(TaskType t);
// Types that skip context refinement.
bool IsRefinementExempt(TaskType t);

struct KnowledgeNote {
  std::string term;  // the concept name
  std::string explanation;
};

struct ContextBundle {
  std::string figure_id;
  std::string inline_summary;
  std::vector<KnowledgeNote> knowledge_notes;
  std::map<std::string, std::string> panel_descriptions;  // panel_id -> text
  std::string caption;
};

struct LeakageReport {
  std::vector<std::string> overlapping_ngrams;  // after refinement
  std::vector<std::string> initial_ngrams;
  int iterations_used = 0;
  bool hard_redacted = false;
};

struct Provenance {
  std::string article_id;
  std::string figure_id;
  std::vector<std::string> panel_ids;
  std::map<std::string, std::string> stage_model_ids;  // "1".."5" -> endpoint_id
  std::map<std::string, std::string> prompt_digests;   // "1", "2", "3:A", "4", "5:1", ...
  bool refined = false;
  std::uint64_t seed = 0;
  std::vector<std::string> flags;
  std::optional<LeakageReport> leakage;
};

struct InstructionRecord {
  std::string record_id;  // <article>/<figure>/<task_type>/<n>
  TaskType task_type = TaskType::kTextOnly;
  std::vector<std::string> images;  // paths relative to the dataset directory
  std::string context;
  std::string question;
  std::string answer;
  std::optional<std::vector<std::string>> options;
  std::optional<std::string> correct_option;  // "A".."D"
  Provenance provenance;
};

nlohmann::json ToJson(const LeakageReport& r);
LeakageReport LeakageFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const InstructionRecord& r);
InstructionRecord RecordFromJson(const nlohmann::json& j);

// Compact single-line JSON.
std::string ToJsonLine(const InstructionRecord& r);

// Empty when the record satisfies every invariant.
std::vector<std::string> ValidateRecord(const InstructionRecord& r);

struct DatasetCheck {
  std::size_t records = 0;
  std::vector<std::string> violations;  // "line N: ..."
};
DatasetCheck ValidateDatasetFile(const std::filesystem::path& jsonl);

std::vector<InstructionRecord> ReadDataset(const std::filesystem::path& jsonl);

}  // namespace medforge::forge
