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
#include <map>
#include <string>
#include <vector>

#include "medforge/figure/panel.hpp"
#include "medforge/forge/records.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::forge {

struct Stage1Result {
  std::string summary;
  std::string digest;
  bool empty_inline_text = false;
};
Stage1Result Stage1Summarize(const std::string& inline_text, const std::string& caption,
                             gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint,
                             const gateway::Sampling& sampling);

struct Stage2Result {
  std::vector<KnowledgeNote> notes;
  std::string digest;
  bool repaired = false;
};
// Throws UnparseableReply when the repair attempt also fails.
Stage2Result Stage2Complement(const std::string& caption, const std::string& summary, gateway::ModelGateway& gw,
                              const gateway::EndpointConfig& endpoint, const gateway::Sampling& sampling);

struct Stage3Result {
  std::map<std::string, std::string> descriptions;  // panel_id -> text
  std::map<std::string, std::string> digests;       // panel_id -> prompt digest
  std::map<std::string, std::string> failures;      // panel_id -> error name
};
// `crops` holds one PNG per panel of `figure`, in panel order. Throws
// FigureRejected when more than `tolerance` of the panels fail.
Stage3Result Stage3DescribePanels(const figure::CompoundFigureRecord& figure,
                                  const std::vector<std::vector<std::uint8_t>>& crops, const std::string& summary,
                                  gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint,
                                  const gateway::Sampling& sampling, double tolerance = 0.25);

struct ImageRef {
  std::string panel_id;  // empty for the whole figure
  std::string path;      // dataset-relative
  std::vector<std::uint8_t> bytes;
  std::string mime = "image/png";
};

struct Stage4Request {
  TaskType type = TaskType::kTextOnly;
  int variant = 0;
  std::uint64_t seed = 0;
  const ContextBundle* bundle = nullptr;
  const figure::CompoundFigureRecord* figure = nullptr;
  std::map<std::string, ImageRef> crops;  // panel_id -> crop
  ImageRef compound;
  double spatial_tau = 0.05;
};

struct Stage4Result {
  InstructionRecord record;  // record_id and article-level provenance left for the caller
  std::string digest;        // empty for template-generated records
};

// First sentence of a panel description without its terminal period.
std::string SpatialPhraseSubject(const std::string& description);

// Throws InsufficientPanels for multi-image types with fewer than two
// described panels, UnparseableReply after a failed repair.
Stage4Result Stage4Generate(const Stage4Request& req, gateway::ModelGateway& gw,
                            const gateway::EndpointConfig& endpoint, const gateway::Sampling& sampling);

struct Stage5Options {
  std::size_t ngram = 4;
  int max_iterations = 3;
};
// Rewrites record.context in place and records the stage-5 digests.
LeakageReport Stage5Refine(InstructionRecord& record, gateway::ModelGateway& gw,
                           const gateway::EndpointConfig& endpoint, const gateway::Sampling& sampling,
                           const Stage5Options& options = {});

}  // namespace medforge::forge
