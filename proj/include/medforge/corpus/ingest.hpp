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
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/corpus/article.hpp"
#include "medforge/corpus/gates.hpp"
#include "medforge/figure/classifier.hpp"
#include "medforge/figure/panel.hpp"
#include "medforge/figure/segment.hpp"

namespace medforge::corpus {

// A figure that passed every gate, with what the generation stages need.
struct GatedFigure {
  std::string article_id;
  std::filesystem::path package_dir;
  std::string graphic_path;  // relative to package_dir
  std::string inline_text;
  figure::CompoundFigureRecord record;
  double medical_ratio = 1.0;

  std::string Key() const { return article_id + "/" + record.figure_id; }
};

struct Rejection {
  std::string article_id;
  std::optional<std::string> figure_id;  // empty for article-level gates
  GateDecision decision;
};

struct IngestFailure {
  std::string package;  // directory name
  std::optional<std::string> figure_id;
  std::string error;    // Errc name
  std::string message;
};

struct IngestResult {
  std::size_t articles_seen = 0;
  std::size_t figures_seen = 0;
  std::vector<GatedFigure> figures;  // corpus order: package name, then figure order
  std::vector<Rejection> rejections;
  std::vector<IngestFailure> failures;

  std::map<std::string, std::size_t> RejectionCounts() const;  // by rule name
  nlohmann::json ReportJson() const;
  nlohmann::json IndexJson(const GatedFigure& fig) const;
};

struct IngestOptions {
  GateConfig gates;
  figure::SegmentParams segmentation;
  const figure::PanelSegmenter* segmenter = nullptr;    // default: ProjectionSegmenter(segmentation)
  const figure::PanelClassifier* classifier = nullptr;  // default: PassThroughClassifier
  std::size_t workers = 1;
};

// Panels get caption labels when the caption's markers match the panel
// count one to one (in row-major order); otherwise labels stay empty.
void AttachLabels(figure::CompoundFigureRecord& record);

IngestResult IngestCorpus(const std::filesystem::path& corpus_dir, const IngestOptions& options);

}  // namespace medforge::corpus
