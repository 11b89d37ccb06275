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

#include "medforge/forge/prompts.hpp"

#include "medforge/gateway/mock_backend.hpp"

namespace medforge::forge {

using gateway::CallKind;
using gateway::ModelCall;
using gateway::Part;
using gateway::Section;

namespace {

constexpr const char* kStage1System =
    "You are a clinical writer preparing teaching material from biomedical articles.\n"
    "Task identifier: [task:stage1]\n"
    "Read the figure caption and the article paragraphs that cite the figure. Write a short, coherent clinical "
    "narrative covering the patient or specimen, the key findings and the diagnosis or conclusion. Use only "
    "facts stated in the inputs. If no article text is given, work from the caption alone.\n"
    "Reply with one line in exactly this form:\n"
    "SUMMARY: <narrative>";

constexpr const char* kStage2System =
    "You are a medical educator.\n"
    "Task identifier: [task:stage2]\n"
    "List the medical concepts a reader needs to interpret this figure: conditions, signs and symptoms, "
    "anatomy, imaging or laboratory techniques. Give each concept a one or two sentence explanation grounded "
    "in standard medical knowledge. Do not repeat a concept.\n"
    "Reply with one block per concept, blocks separated by a blank line, in exactly this form:\n"
    "CONCEPT: <name>\n"
    "EXPLANATION: <explanation>";

constexpr const char* kStage3System =
    "You are a radiologist and pathologist describing one sub-image cut from a compound medical figure.\n"
    "Task identifier: [task:stage3]\n"
    "Describe what is visible in the attached sub-image: modality, view or stain, anatomy and notable "
    "findings. Use the caption text only to disambiguate; do not describe other sub-images. Start with one "
    "short sentence naming what the sub-image shows.\n"
    "Reply in exactly this form:\n"
    "DESCRIPTION: <description>";

constexpr const char* kStage4Skeleton =
    "Reply in exactly this form:\n"
    "CONTEXT: <background a reader needs, without revealing the answer>\n"
    "QUESTION: <question>\n"
    "ANSWER: <answer>";

constexpr const char* kStage4ChoiceSkeleton =
    "Reply in exactly this form:\n"
    "CONTEXT: <background a reader needs, without revealing the answer>\n"
    "QUESTION: <question>\n"
    "OPTIONS:\n"
    "A) <option>\n"
    "B) <option>\n"
    "C) <option>\n"
    "D) <option>\n"
    "ANSWER: <letter of the correct option>";

std::string Stage4Instruction(TaskType t) {
  switch (t) {
    case TaskType::kMultiImageMultiSubimage:
      return "The attached images are the sub-images of one compound figure, in panel order. Write a question "
             "whose answer requires combining findings from several sub-images, and answer it.";
    case TaskType::kMultiImageSingleSubimage:
      return "The attached images are the sub-images of one compound figure, in panel order. Write a question "
             "about the sub-image named in TARGET_PANEL only, phrased so the reader must locate it among the "
             "others, and answer it.";
    case TaskType::kSingleImage:
      return "The attached image is a whole compound figure. Write a question about the figure as a whole, "
             "such as the overall diagnosis or what the panels jointly demonstrate, and answer it.";
    case TaskType::kTextOnly:
      return "No image is attached. Write a question that can be answered from the described findings and "
             "medical knowledge alone, and answer it.";
    case TaskType::kMultiChoice:
      return "The attached image is a whole compound figure. Write a multiple-choice question with one correct "
             "option and three plausible but wrong distractors of similar length and style.";
    case TaskType::kMultiImageSpatial:
      break;
  }
  return {};
}

}  // namespace

std::string Stage4TaskName(TaskType t) {
  switch (t) {
    case TaskType::kMultiImageMultiSubimage: return "stage4_multi_subimage";
    case TaskType::kMultiImageSingleSubimage: return "stage4_single_subimage";
    case TaskType::kSingleImage: return "stage4_single_image";
    case TaskType::kTextOnly: return "stage4_text_only";
    case TaskType::kMultiChoice: return "stage4_multi_choice";
    case TaskType::kMultiImageSpatial: return "stage4_spatial";
  }
  return "stage4";
}

std::string FormatKnowledge(const std::vector<KnowledgeNote>& notes) {
  std::string out;
  for (const auto& n : notes) out += n.term + ": " + n.explanation + "\n";
  if (!out.empty()) out.pop_back();
  return out;
}

std::string FormatDescriptions(const std::map<std::string, std::string>& descriptions) {
  std::string out;
  for (const auto& [id, d] : descriptions) out += "Panel " + id + ": " + d + "\n";
  if (!out.empty()) out.pop_back();
  return out;
}

ModelCall Stage1Call(const std::string& inline_text, const std::string& caption,
                     const gateway::Sampling& sampling) {
  ModelCall c;
  c.kind = CallKind::kChat;
  c.system_prompt = kStage1System;
  std::string user = Section("CAPTION", caption);
  if (!inline_text.empty()) user += Section("INLINE_TEXT", inline_text);
  c.parts.push_back(Part::Text(std::move(user)));
  c.sampling = sampling;
  return c;
}

ModelCall Stage2Call(const std::string& caption, const std::string& summary, const gateway::Sampling& sampling) {
  ModelCall c;
  c.kind = CallKind::kChat;
  c.system_prompt = kStage2System;
  c.parts.push_back(Part::Text(Section("CAPTION", caption) + Section("SUMMARY", summary)));
  c.sampling = sampling;
  return c;
}

ModelCall Stage3Call(const std::string& panel_id, const std::string& sub_caption, const std::string& caption,
                     const std::string& summary, std::vector<std::uint8_t> crop_png,
                     const gateway::Sampling& sampling) {
  ModelCall c;
  c.kind = CallKind::kVisionChat;
  c.system_prompt = kStage3System;
  std::string user = Section("PANEL", panel_id);
  if (!sub_caption.empty()) user += Section("SUB_CAPTION", sub_caption);
  user += Section("CAPTION", caption) + Section("SUMMARY", summary);
  c.parts.push_back(Part::Text(std::move(user)));
  c.parts.push_back(Part::Image(std::move(crop_png)));
  c.sampling = sampling;
  return c;
}

ModelCall Stage4Call(const Stage4Input& in, const gateway::Sampling& sampling) {
  ModelCall c;
  c.kind = in.images.empty() ? CallKind::kChat : CallKind::kVisionChat;
  c.system_prompt = "You write instruction-tuning data for medical vision-language models.\nTask identifier: [task:" +
                    Stage4TaskName(in.type) + "]\n" + Stage4Instruction(in.type) + "\n" +
                    (in.type == TaskType::kMultiChoice ? kStage4ChoiceSkeleton : kStage4Skeleton);
  const ContextBundle& b = *in.bundle;
  std::string user = Section("CAPTION", b.caption) + Section("SUMMARY", b.inline_summary) +
                     Section("KNOWLEDGE", FormatKnowledge(b.knowledge_notes)) +
                     Section("DESCRIPTIONS", FormatDescriptions(b.panel_descriptions));
  if (!in.target_panel.empty()) {
    user += Section("TARGET_PANEL", in.target_panel);
    auto it = b.panel_descriptions.find(in.target_panel);
    if (it != b.panel_descriptions.end()) user += Section("TARGET_DESCRIPTION", it->second);
  }
  if (in.variant > 0) user += Section("VARIANT", std::to_string(in.variant + 1));
  c.parts.push_back(Part::Text(std::move(user)));
  for (const auto& img : in.images) c.parts.push_back(img);
  c.sampling = sampling;
  return c;
}

ModelCall Stage5Call(const std::string& context, const std::string& question, const std::string& answer,
                     const std::vector<std::string>& leaked, const gateway::Sampling& sampling) {
  ModelCall c;
  c.kind = CallKind::kChat;
  c.system_prompt =
      "You edit question-answer pairs for medical training data.\n"
      "Task identifier: [task:stage5]\n"
      "The CONTEXT below gives away part of the ANSWER. Rewrite the context so it still supports the question "
      "but no longer states the answer or repeats its wording. The phrases listed in LEAKED must not appear. "
      "Keep everything else.\n"
      "Reply in exactly this form:\n"
      "CONTEXT: <rewritten context>";
  std::string leaked_lines;
  for (const auto& g : leaked) leaked_lines += g + "\n";
  c.parts.push_back(Part::Text(Section("CONTEXT", context) + Section("QUESTION", question) +
                               Section("ANSWER", answer) + Section("LEAKED", leaked_lines)));
  c.sampling = sampling;
  return c;
}

ModelCall RepairCall(ModelCall call, const std::string& previous_reply, const std::string& problem) {
  call.parts.insert(call.parts.begin() + (call.parts.empty() ? 0 : 1), Part::Text(Section("PREVIOUS_REPLY", previous_reply) +
                                                       Section("PROBLEM", problem + " Reply again using the "
                                                                                    "required form only.")));
  return call;
}

}  // namespace medforge::forge
