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

#include "medforge/forge/records.hpp"

#include <fstream>
#include <set>

#include "medforge/common/error.hpp"

namespace medforge::forge {

std::string_view TaskTypeName(TaskType t) {
  switch (t) {
    case TaskType::kMultiImageMultiSubimage: return "multi_image_multi_subimage";
    case TaskType::kMultiImageSingleSubimage: return "multi_image_single_subimage";
    case TaskType::kMultiImageSpatial: return "multi_image_spatial";
    case TaskType::kSingleImage: return "single_image";
    case TaskType::kTextOnly: return "text_only";
    case TaskType::kMultiChoice: return "multi_choice";
  }
  return "text_only";
}

std::optional<TaskType> TaskTypeFromName(std::string_view name) {
  for (auto t : kAllTaskTypes) {
    if (TaskTypeName(t) == name) return t;
  }
  return std::nullopt;
}

bool IsMultiImage(TaskType t) {
  return t == TaskType::kMultiImageMultiSubimage || t == TaskType::kMultiImageSingleSubimage ||
         t == TaskType::kMultiImageSpatial;
}

bool IsRefinementExempt(TaskType t) { return t == TaskType::kMultiImageSpatial || t == TaskType::kMultiChoice; }

nlohmann::json ToJson(const LeakageReport& r) {
  return {{"overlapping_ngrams", r.overlapping_ngrams},
          {"initial_ngrams", r.initial_ngrams},
          {"iterations_used", r.iterations_used},
          {"hard_redacted", r.hard_redacted}};
}

LeakageReport LeakageFromJson(const nlohmann::json& j) {
  LeakageReport r;
  r.overlapping_ngrams = j.at("overlapping_ngrams").get<std::vector<std::string>>();
  r.initial_ngrams = j.value("initial_ngrams", std::vector<std::string>{});
  r.iterations_used = j.at("iterations_used").get<int>();
  r.hard_redacted = j.at("hard_redacted").get<bool>();
  return r;
}

nlohmann::json ToJson(const InstructionRecord& r) {
  nlohmann::json p;
  p["article_id"] = r.provenance.article_id;
  p["figure_id"] = r.provenance.figure_id;
  p["panel_ids"] = r.provenance.panel_ids;
  p["stage_model_ids"] = r.provenance.stage_model_ids;
  p["prompt_digests"] = r.provenance.prompt_digests;
  p["refined"] = r.provenance.refined;
  p["seed"] = r.provenance.seed;
  p["flags"] = r.provenance.flags;
  p["leakage"] = r.provenance.leakage ? ToJson(*r.provenance.leakage) : nlohmann::json(nullptr);

  nlohmann::json j;
  j["record_id"] = r.record_id;
  j["task_type"] = std::string(TaskTypeName(r.task_type));
  j["images"] = r.images;
  j["context"] = r.context;
  j["question"] = r.question;
  j["answer"] = r.answer;
  j["options"] = r.options ? nlohmann::json(*r.options) : nlohmann::json(nullptr);
  j["correct_option"] = r.correct_option ? nlohmann::json(*r.correct_option) : nlohmann::json(nullptr);
  j["provenance"] = std::move(p);
  return j;
}

InstructionRecord RecordFromJson(const nlohmann::json& j) {
  InstructionRecord r;
  try {
    r.record_id = j.at("record_id").get<std::string>();
    const auto type_name = j.at("task_type").get<std::string>();
    auto type = TaskTypeFromName(type_name);
    if (!type) throw Error(Errc::kInvalidArgument, "unknown task_type '" + type_name + "'");
    r.task_type = *type;
    r.images = j.at("images").get<std::vector<std::string>>();
    r.context = j.at("context").get<std::string>();
    r.question = j.at("question").get<std::string>();
    r.answer = j.at("answer").get<std::string>();
    if (j.contains("options") && !j["options"].is_null()) r.options = j["options"].get<std::vector<std::string>>();
    if (j.contains("correct_option") && !j["correct_option"].is_null()) {
      r.correct_option = j["correct_option"].get<std::string>();
    }
    const auto& p = j.at("provenance");
    r.provenance.article_id = p.at("article_id").get<std::string>();
    r.provenance.figure_id = p.at("figure_id").get<std::string>();
    r.provenance.panel_ids = p.at("panel_ids").get<std::vector<std::string>>();
    r.provenance.stage_model_ids = p.at("stage_model_ids").get<std::map<std::string, std::string>>();
    r.provenance.prompt_digests = p.at("prompt_digests").get<std::map<std::string, std::string>>();
    r.provenance.refined = p.at("refined").get<bool>();
    r.provenance.seed = p.value("seed", std::uint64_t{0});
    r.provenance.flags = p.value("flags", std::vector<std::string>{});
    if (p.contains("leakage") && !p["leakage"].is_null()) r.provenance.leakage = LeakageFromJson(p["leakage"]);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("instruction record: ") + e.what());
  }
  return r;
}

std::string ToJsonLine(const InstructionRecord& r) { return ToJson(r).dump(-1, ' ', false) + "\n"; }

std::vector<std::string> ValidateRecord(const InstructionRecord& r) {
  std::vector<std::string> v;
  const auto& p = r.provenance;
  const std::string type(TaskTypeName(r.task_type));
  if (r.record_id.empty()) v.push_back("record_id is empty");
  if (r.record_id.find("/" + type + "/") == std::string::npos) v.push_back("record_id does not name task_type");
  if (r.question.empty()) v.push_back("question is empty");
  if (r.answer.empty()) v.push_back("answer is empty");

  if (r.task_type == TaskType::kMultiChoice) {
    if (!r.options || r.options->size() != 4) {
      v.push_back("multi_choice needs exactly 4 options");
    } else if (!r.correct_option || r.correct_option->size() != 1 || (*r.correct_option)[0] < 'A' ||
               (*r.correct_option)[0] > 'D') {
      v.push_back("correct_option must be one of A-D");
    } else {
      const auto& opts = *r.options;
      if ((opts)[static_cast<std::size_t>((*r.correct_option)[0] - 'A')] != r.answer) {
        v.push_back("options[correct_option] differs from answer");
      }
      std::set<std::string> distinct(opts.begin(), opts.end());
      if (distinct.size() != 4) v.push_back("options are not distinct");
      for (const auto& o : opts) {
        if (o.empty()) v.push_back("empty option");
      }
    }
  } else if (r.options || r.correct_option) {
    v.push_back("options present on a non multi_choice record");
  }

  if (r.task_type == TaskType::kTextOnly && !r.images.empty()) v.push_back("text_only record has images");
  if ((r.task_type == TaskType::kSingleImage || r.task_type == TaskType::kMultiChoice) && r.images.size() != 1) {
    v.push_back(type + " needs exactly one image");
  }
  if (IsMultiImage(r.task_type) && r.images.size() < 2 &&
      !(r.images.size() == 1 && p.panel_ids.size() >= 2)) {
    v.push_back(type + " needs at least two images");
  }

  if (p.article_id.empty()) v.push_back("provenance.article_id is empty");
  if (p.figure_id.empty()) v.push_back("provenance.figure_id is empty");
  if (p.panel_ids.empty()) v.push_back("provenance.panel_ids is empty");
  if (r.task_type == TaskType::kMultiImageSpatial && p.panel_ids.size() != 2) {
    v.push_back("multi_image_spatial needs exactly two panel_ids");
  }
  for (const char* stage : {"1", "2", "3", "4", "5"}) {
    if (!p.stage_model_ids.count(stage)) v.push_back(std::string("stage_model_ids lacks stage ") + stage);
  }
  if (!p.prompt_digests.count("1")) v.push_back("prompt_digests lacks stage 1");
  if (!p.prompt_digests.count("2")) v.push_back("prompt_digests lacks stage 2");
  bool stage3 = false;
  for (const auto& [k, d] : p.prompt_digests) {
    stage3 = stage3 || k.rfind("3:", 0) == 0;
    if (d.size() != 64) v.push_back("prompt digest " + k + " is not a SHA-256 hex string");
  }
  if (!stage3) v.push_back("prompt_digests lacks stage 3");
  if (r.task_type != TaskType::kMultiImageSpatial && !p.prompt_digests.count("4")) {
    v.push_back("prompt_digests lacks stage 4");
  }
  if (!p.leakage) {
    v.push_back("provenance.leakage missing");
  } else if (!p.leakage->overlapping_ngrams.empty() && !IsRefinementExempt(r.task_type)) {
    v.push_back("context still shares n-grams with the answer");
  }
  return v;
}

std::vector<InstructionRecord> ReadDataset(const std::filesystem::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) throw Error(Errc::kIoError, "cannot open " + jsonl.string());
  std::vector<InstructionRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(RecordFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kMalformedSource, jsonl.string() + " line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

DatasetCheck ValidateDatasetFile(const std::filesystem::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) throw Error(Errc::kIoError, "cannot open " + jsonl.string());
  DatasetCheck check;
  std::set<std::string> ids;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(n) + ": ";
    try {
      auto rec = RecordFromJson(nlohmann::json::parse(line));
      ++check.records;
      if (!ids.insert(rec.record_id).second) check.violations.push_back(where + "duplicate record_id");
      for (auto& msg : ValidateRecord(rec)) check.violations.push_back(where + msg);
    } catch (const std::exception& e) {
      check.violations.push_back(where + e.what());
    }
  }
  return check;
}

}  // namespace medforge::forge
