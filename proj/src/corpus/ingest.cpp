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

#include "medforge/corpus/ingest.hpp"

#include <spdlog/spdlog.h>

#include <future>
#include <memory>

#include "medforge/common/error.hpp"
#include "medforge/common/thread_pool.hpp"
#include "medforge/figure/labels.hpp"

namespace medforge::corpus {
namespace fs = std::filesystem;

namespace {

struct PackageOutcome {
  bool parsed = false;
  std::string article_id;
  std::size_t figures_seen = 0;
  std::vector<GatedFigure> figures;
  std::vector<Rejection> rejections;
  std::vector<IngestFailure> failures;
};

PackageOutcome IngestPackage(const fs::path& dir, const IngestOptions& opt,
                             const figure::PanelSegmenter& segmenter,
                             const figure::PanelClassifier& classifier) {
  PackageOutcome out;
  const std::string name = dir.filename().string();
  ArticlePackage pkg;
  try {
    pkg = ParseArticle(dir);
  } catch (const Error& e) {
    out.failures.push_back({name, std::nullopt, std::string(ErrcName(e.code())), e.message()});
    return out;
  }
  out.parsed = true;
  out.article_id = pkg.article_id;
  out.figures_seen = pkg.figures.size();

  auto license = FilterLicense(pkg, opt.gates.license_allowlist);
  if (!license.passed) {
    out.rejections.push_back({pkg.article_id, std::nullopt, license});
    return out;
  }

  for (const auto& fig : pkg.figures) {
    auto caption = ApplyCaptionGate(fig, opt.gates.caption_words_exceed, opt.gates.sub_caption_min_words);
    if (!caption.passed) {
      out.rejections.push_back({pkg.article_id, fig.figure_id, caption});
      continue;
    }
    try {
      auto image = figure::LoadImage(dir / fig.graphic_path);
      GatedFigure g;
      g.article_id = pkg.article_id;
      g.package_dir = dir;
      g.graphic_path = fig.graphic_path;
      g.inline_text = ExtractInlineText(pkg, fig.figure_id);
      g.record.figure_id = fig.figure_id;
      g.record.image_width = image.width;
      g.record.image_height = image.height;
      g.record.caption = fig.caption;
      g.record.sub_captions = fig.sub_captions;
      g.record.panels = segmenter.Split(image);
      AttachLabels(g.record);
      g.medical_ratio = figure::MedicalContentRatio(image, g.record.panels, classifier);
      auto medical = ApplyMedicalGate(g.medical_ratio, opt.gates.medical_ratio_exceed);
      if (!medical.passed) {
        out.rejections.push_back({pkg.article_id, fig.figure_id, medical});
        continue;
      }
      out.figures.push_back(std::move(g));
    } catch (const Error& e) {
      out.failures.push_back({name, fig.figure_id, std::string(ErrcName(e.code())), e.message()});
    }
  }
  return out;
}

}  // namespace

void AttachLabels(figure::CompoundFigureRecord& record) {
  auto labels = figure::ParsePanelLabels(record.caption);
  const bool matched = labels.entries.size() == record.panels.size();
  for (std::size_t i = 0; i < record.panels.size(); ++i) {
    if (matched) {
      record.panels[i].label = labels.entries[i].label;
    } else {
      record.panels[i].label.reset();
    }
  }
}

std::map<std::string, std::size_t> IngestResult::RejectionCounts() const {
  std::map<std::string, std::size_t> counts;
  for (auto rule : {GateRule::kLicense, GateRule::kCompoundCaptionLength, GateRule::kSubCaptionLength,
                    GateRule::kMedicalRatio}) {
    counts[std::string(GateRuleName(rule))] = 0;
  }
  for (const auto& r : rejections) ++counts[std::string(GateRuleName(r.decision.rule))];
  return counts;
}

nlohmann::json IngestResult::ReportJson() const {
  nlohmann::json j;
  j["articles_seen"] = articles_seen;
  j["figures_seen"] = figures_seen;
  j["figures_accepted"] = figures.size();
  j["rejection_counts"] = RejectionCounts();
  j["rejections"] = nlohmann::json::array();
  for (const auto& r : rejections) {
    nlohmann::json e = ToJson(r.decision);
    e["article_id"] = r.article_id;
    e["figure_id"] = r.figure_id ? nlohmann::json(*r.figure_id) : nlohmann::json(nullptr);
    j["rejections"].push_back(std::move(e));
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : failures) {
    j["failures"].push_back({{"package", f.package},
                             {"figure_id", f.figure_id ? nlohmann::json(*f.figure_id) : nlohmann::json(nullptr)},
                             {"error", f.error},
                             {"message", f.message}});
  }
  return j;
}

nlohmann::json IngestResult::IndexJson(const GatedFigure& fig) const {
  nlohmann::json j;
  j["article_id"] = fig.article_id;
  j["package"] = fig.package_dir.filename().string();
  j["graphic"] = fig.graphic_path;
  j["medical_ratio"] = fig.medical_ratio;
  j["figure"] = figure::ToJson(fig.record);
  return j;
}

IngestResult IngestCorpus(const fs::path& corpus_dir, const IngestOptions& options) {
  const auto packages = ListPackages(corpus_dir);

  std::unique_ptr<figure::PanelSegmenter> owned_segmenter;
  const figure::PanelSegmenter* segmenter = options.segmenter;
  if (!segmenter) {
    owned_segmenter = std::make_unique<figure::ProjectionSegmenter>(options.segmentation);
    segmenter = owned_segmenter.get();
  }
  figure::PassThroughClassifier pass_through;
  const figure::PanelClassifier* base = options.classifier ? options.classifier : &pass_through;
  std::unique_ptr<figure::SerializedClassifier> serialized;
  if (!base->Concurrent() && options.workers > 1) {
    serialized = std::make_unique<figure::SerializedClassifier>(*base);
    base = serialized.get();
  }

  std::vector<PackageOutcome> outcomes(packages.size());
  {
    ThreadPool pool(std::max<std::size_t>(1, std::min(options.workers, packages.size())));
    std::vector<std::future<void>> pending;
    pending.reserve(packages.size());
    for (std::size_t i = 0; i < packages.size(); ++i) {
      pending.push_back(pool.Submit([&, i] { outcomes[i] = IngestPackage(packages[i], options, *segmenter, *base); }));
    }
    for (auto& f : pending) f.get();
  }

  IngestResult result;
  std::set<std::string> article_ids;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (o.parsed) ++result.articles_seen;
    result.figures_seen += o.figures_seen;
    const std::string& id = o.article_id;
    if (o.parsed && !article_ids.insert(id).second) {
      result.failures.push_back({packages[i].filename().string(), std::nullopt,
                                 std::string(ErrcName(Errc::kMalformedSource)),
                                 "duplicate article_id '" + id + "'"});
      continue;
    }
    for (auto& f : o.figures) result.figures.push_back(std::move(f));
    for (auto& r : o.rejections) result.rejections.push_back(std::move(r));
    for (auto& f : o.failures) result.failures.push_back(std::move(f));
  }
  return result;
}

}  // namespace medforge::corpus
