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

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/corpus/ingest.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::cli {

extern const std::vector<std::string> kModalityVocabulary;  // ends with "other"
extern const std::vector<std::string> kAnatomyVocabulary;   // ends with "other"

// Case-insensitive match against the vocabulary; anything else is "other".
std::string NormalizeTag(const std::string& reply, const std::vector<std::string>& vocabulary);

struct FigureTags {
  std::string modality = "other";
  std::string anatomy = "other";
};

gateway::ModelCall TaggerCall(const corpus::GatedFigure& fig);
// Reads {"modality", "anatomy"} from the reply; unparseable replies give "other".
FigureTags ParseTaggerReply(const std::string& reply);

struct CorpusStats {
  std::size_t figures = 0;
  double mean_sub_figures = 0;
  double mean_caption_words = 0;
  double mean_inline_words = 0;
  double mean_width = 0;
  double mean_height = 0;
  std::map<std::string, double> modality_pct;  // every vocabulary entry present
  std::map<std::string, double> anatomy_pct;
  std::map<std::string, std::size_t> modality_counts;
  std::map<std::string, std::size_t> anatomy_counts;

  nlohmann::json ToJson() const;
};

// One tagger call per figure when `tagger` is given; otherwise the
// distributions are left empty. Throws EmptyInput on no figures.
CorpusStats ComputeCorpusStats(const std::vector<corpus::GatedFigure>& figures, gateway::ModelGateway* gw,
                               const gateway::EndpointConfig* tagger);

}  // namespace medforge::cli
