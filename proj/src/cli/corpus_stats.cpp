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

#include "medforge/cli/corpus_stats.hpp"

#include "medforge/common/error.hpp"
#include "medforge/common/text.hpp"
#include "medforge/gateway/mock_backend.hpp"

namespace medforge::cli {

const std::vector<std::string> kModalityVocabulary = {
    "microscopy", "histopathology", "multimodal composite", "MRI",   "CT",
    "PET-CT",     "ultrasound",     "X-ray",                "clinical photography", "other"};

const std::vector<std::string> kAnatomyVocabulary = {
    "neurological",    "ophthalmology",   "cardiovascular", "respiratory", "gastrointestinal",
    "musculoskeletal", "reproductive",    "dermatology",    "other"};

std::string NormalizeTag(const std::string& reply, const std::vector<std::string>& vocabulary) {
  const auto want = text::ToLowerAscii(text::Trim(reply));
  for (const auto& v : vocabulary) {
    if (text::ToLowerAscii(v) == want) return v;
  }
  return "other";
}

gateway::ModelCall TaggerCall(const corpus::GatedFigure& fig) {
  gateway::ModelCall call;
  call.kind = gateway::CallKind::kChat;
  call.system_prompt =
      "You label biomedical figures. Task identifier: " + gateway::TaskMarker("tagger") +
      "\nPick exactly one imaging modality from: " + text::Join(kModalityVocabulary, ", ") +
      ".\nPick exactly one anatomical system from: " + text::Join(kAnatomyVocabulary, ", ") +
      ".\nReply with JSON only: {\"modality\": \"...\", \"anatomy\": \"...\"}";
  call.parts.push_back(gateway::Part::Text(gateway::Section("CAPTION", fig.record.caption) +
                                           gateway::Section("INLINE_TEXT", fig.inline_text)));
  return call;
}

FigureTags ParseTaggerReply(const std::string& reply) {
  FigureTags tags;
  const auto open = reply.find('{');
  const auto close = reply.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) return tags;
  auto j = nlohmann::json::parse(reply.substr(open, close - open + 1), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return tags;
  if (j.contains("modality") && j["modality"].is_string()) {
    tags.modality = NormalizeTag(j["modality"].get<std::string>(), kModalityVocabulary);
  }
  if (j.contains("anatomy") && j["anatomy"].is_string()) {
    tags.anatomy = NormalizeTag(j["anatomy"].get<std::string>(), kAnatomyVocabulary);
  }
  return tags;
}

nlohmann::json CorpusStats::ToJson() const {
  nlohmann::json j = {{"figures", figures},
                      {"mean_sub_figures", mean_sub_figures},
                      {"mean_caption_words", mean_caption_words},
                      {"mean_inline_words", mean_inline_words},
                      {"mean_width", mean_width},
                      {"mean_height", mean_height}};
  if (modality_counts.empty()) {
    j["modality"] = nullptr;
    j["anatomy"] = nullptr;
  } else {
    j["modality"] = {{"percent", modality_pct}, {"counts", modality_counts}};
    j["anatomy"] = {{"percent", anatomy_pct}, {"counts", anatomy_counts}};
  }
  return j;
}

CorpusStats ComputeCorpusStats(const std::vector<corpus::GatedFigure>& figures, gateway::ModelGateway* gw,
                               const gateway::EndpointConfig* tagger) {
  if (figures.empty()) throw Error(Errc::kEmptyInput, "no gated figures to describe");
  CorpusStats s;
  s.figures = figures.size();
  const double n = static_cast<double>(figures.size());
  for (const auto& f : figures) {
    s.mean_sub_figures += static_cast<double>(f.record.panels.size()) / n;
    s.mean_caption_words += static_cast<double>(text::WordCount(f.record.caption)) / n;
    s.mean_inline_words += static_cast<double>(text::WordCount(f.inline_text)) / n;
    s.mean_width += static_cast<double>(f.record.image_width) / n;
    s.mean_height += static_cast<double>(f.record.image_height) / n;
  }
  if (!gw || !tagger) return s;
  for (const auto& v : kModalityVocabulary) s.modality_counts[v] = 0;
  for (const auto& v : kAnatomyVocabulary) s.anatomy_counts[v] = 0;
  for (const auto& f : figures) {
    const auto tags = ParseTaggerReply(gw->Invoke(*tagger, TaggerCall(f)).reply.text);
    ++s.modality_counts[tags.modality];
    ++s.anatomy_counts[tags.anatomy];
  }
  for (const auto& [k, c] : s.modality_counts) s.modality_pct[k] = 100.0 * static_cast<double>(c) / n;
  for (const auto& [k, c] : s.anatomy_counts) s.anatomy_pct[k] = 100.0 * static_cast<double>(c) / n;
  return s;
}

}  // namespace medforge::cli
