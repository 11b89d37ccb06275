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

#include "medforge/forge/stages.hpp"

#include <spdlog/spdlog.h>

#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/common/text.hpp"
#include "medforge/figure/spatial.hpp"
#include "medforge/forge/leakage.hpp"
#include "medforge/forge/parse.hpp"
#include "medforge/forge/prompts.hpp"

namespace medforge::forge {

using gateway::ModelCall;

Stage1Result Stage1Summarize(const std::string& inline_text, const std::string& caption,
                             gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint,
                             const gateway::Sampling& sampling) {
  if (text::Trim(caption).empty()) throw Error(Errc::kInvalidArgument, "stage 1 needs a caption");
  Stage1Result out;
  out.empty_inline_text = text::Trim(inline_text).empty();
  auto res = gw.Invoke(endpoint, Stage1Call(out.empty_inline_text ? "" : inline_text, caption, sampling));
  out.digest = res.digest;
  if (auto s = ParseSummary(res.reply.text)) {
    out.summary = *s;
  } else {
    std::string body = res.reply.text;
    if (text::StartsWith(body, gateway::kMockReplyPrefix)) {
      const auto nl = body.find('\n');
      body = nl == std::string::npos ? std::string() : body.substr(nl + 1);
    }
    out.summary = text::NormalizeWhitespace(body);
  }
  if (out.summary.empty()) out.summary = caption;
  return out;
}

Stage2Result Stage2Complement(const std::string& caption, const std::string& summary, gateway::ModelGateway& gw,
                              const gateway::EndpointConfig& endpoint, const gateway::Sampling& sampling) {
  if (text::Trim(caption).empty()) throw Error(Errc::kInvalidArgument, "stage 2 needs a caption");
  Stage2Result out;
  const ModelCall call = Stage2Call(caption, summary, sampling);
  auto res = gw.Invoke(endpoint, call);
  out.notes = ParseKnowledge(res.reply.text);
  out.digest = res.digest;
  if (!out.notes.empty()) return out;
  auto retry = gw.Invoke(endpoint, RepairCall(call, res.reply.text, "No CONCEPT/EXPLANATION pair was found."));
  out.notes = ParseKnowledge(retry.reply.text);
  out.digest = retry.digest;
  out.repaired = true;
  if (out.notes.empty()) {
    throw Error(Errc::kUnparseableReply, "stage 2 reply has no CONCEPT/EXPLANATION pair",
                {{"stage", 2}, {"reply", retry.reply.text}});
  }
  return out;
}

Stage3Result Stage3DescribePanels(const figure::CompoundFigureRecord& figure,
                                  const std::vector<std::vector<std::uint8_t>>& crops, const std::string& summary,
                                  gateway::ModelGateway& gw, const gateway::EndpointConfig& endpoint,
                                  const gateway::Sampling& sampling, double tolerance) {
  if (crops.size() != figure.panels.size()) {
    throw Error(Errc::kInvalidArgument, "stage 3 needs one crop per panel");
  }
  Stage3Result out;
  for (std::size_t i = 0; i < figure.panels.size(); ++i) {
    const auto& panel = figure.panels[i];
    std::string sub;
    if (panel.label) {
      if (auto it = figure.sub_captions.find(*panel.label); it != figure.sub_captions.end()) sub = it->second;
    }
    try {
      auto res = gw.Invoke(endpoint, Stage3Call(panel.panel_id, sub, figure.caption, summary, crops[i], sampling));
      auto d = ParseDescription(res.reply.text);
      if (!d) {
        out.failures[panel.panel_id] = std::string(ErrcName(Errc::kUnparseableReply));
        continue;
      }
      out.descriptions[panel.panel_id] = *d;
      out.digests[panel.panel_id] = res.digest;
    } catch (const Error& e) {
      if (e.code() == Errc::kInvalidConfig) throw;
      spdlog::warn("{} panel {}: {}", figure.figure_id, panel.panel_id, e.what());
      out.failures[panel.panel_id] = std::string(ErrcName(e.code()));
    }
  }
  const double failed = static_cast<double>(out.failures.size());
  if (failed > tolerance * static_cast<double>(figure.panels.size()) || out.descriptions.empty()) {
    throw Error(Errc::kFigureRejected,
                figure.figure_id + ": " + std::to_string(out.failures.size()) + " of " +
                    std::to_string(figure.panels.size()) + " panels failed in stage 3",
                {{"failures", out.failures}});
  }
  return out;
}

std::string SpatialPhraseSubject(const std::string& description) {
  auto sentences = text::SplitSentences(description);
  std::string s = sentences.empty() ? text::Trim(description) : sentences.front();
  while (!s.empty() && s.back() == '.') s.pop_back();
  return text::Trim(s);
}

namespace {

gateway::Part ToPart(const ImageRef& ref) { return gateway::Part::Image(ref.bytes, ref.mime); }

Stage4Result SpatialRecord(const Stage4Request& req) {
  const auto& fig = *req.figure;
  std::vector<const figure::PanelBox*> described;
  for (const auto& p : fig.panels) {
    if (req.bundle->panel_descriptions.count(p.panel_id) && req.crops.count(p.panel_id)) described.push_back(&p);
  }
  if (described.size() < 2) {
    throw Error(Errc::kInsufficientPanels, fig.figure_id + ": spatial questions need two described panels");
  }
  SeededRng rng(req.seed);
  const std::size_t i = static_cast<std::size_t>(rng.Index(described.size()));
  std::size_t j = static_cast<std::size_t>(rng.Index(described.size() - 1));
  if (j >= i) ++j;
  const auto& a = *described[i];
  const auto& b = *described[j];
  const auto rel = figure::DeriveSpatialRelation(a, b, fig.image_width, fig.image_height, req.spatial_tau);
  const std::string desc_a = SpatialPhraseSubject(req.bundle->panel_descriptions.at(a.panel_id));
  const std::string desc_b = SpatialPhraseSubject(req.bundle->panel_descriptions.at(b.panel_id));

  Stage4Result out;
  auto& r = out.record;
  r.task_type = TaskType::kMultiImageSpatial;
  r.context = req.bundle->inline_summary;
  r.question = "What is the spatial relationship between the sub-image showing " + desc_a +
               " and the sub-image showing " + desc_b + "?";
  r.answer = desc_a + " is " + std::string(figure::RelationPhrase(rel)) + " " + desc_b + ".";
  r.images = {req.crops.at(a.panel_id).path, req.crops.at(b.panel_id).path};
  r.provenance.panel_ids = {a.panel_id, b.panel_id};
  r.provenance.seed = req.seed;
  return out;
}

}  // namespace

Stage4Result Stage4Generate(const Stage4Request& req, gateway::ModelGateway& gw,
                            const gateway::EndpointConfig& endpoint, const gateway::Sampling& sampling) {
  if (req.type == TaskType::kMultiImageSpatial) return SpatialRecord(req);
  const auto& fig = *req.figure;
  Stage4Input in;
  in.type = req.type;
  in.bundle = req.bundle;
  in.variant = req.variant;

  Stage4Result out;
  auto& r = out.record;
  r.task_type = req.type;
  r.provenance.seed = req.seed;
  for (const auto& p : fig.panels) r.provenance.panel_ids.push_back(p.panel_id);

  if (IsMultiImage(req.type)) {
    std::vector<std::string> described;
    for (const auto& p : fig.panels) {
      if (req.bundle->panel_descriptions.count(p.panel_id) && req.crops.count(p.panel_id)) {
        described.push_back(p.panel_id);
      }
    }
    if (described.size() < 2) {
      throw Error(Errc::kInsufficientPanels, fig.figure_id + ": multi-image questions need two described panels");
    }
    r.provenance.panel_ids = described;
    for (const auto& id : described) {
      in.images.push_back(ToPart(req.crops.at(id)));
      r.images.push_back(req.crops.at(id).path);
    }
    if (req.type == TaskType::kMultiImageSingleSubimage) {
      SeededRng rng(req.seed);
      in.target_panel = described[static_cast<std::size_t>(rng.Index(described.size()))];
    }
  } else if (req.type == TaskType::kSingleImage || req.type == TaskType::kMultiChoice) {
    in.images.push_back(ToPart(req.compound));
    r.images.push_back(req.compound.path);
  }

  const bool choice = req.type == TaskType::kMultiChoice;
  const ModelCall call = Stage4Call(in, sampling);
  auto res = gw.Invoke(endpoint, call);
  out.digest = res.digest;
  auto parsed = ParseQa(res.reply.text, choice);
  if (!parsed.draft) {
    auto retry = gw.Invoke(endpoint, RepairCall(call, res.reply.text, parsed.problem));
    out.digest = retry.digest;
    parsed = ParseQa(retry.reply.text, choice);
    if (!parsed.draft) {
      throw Error(Errc::kUnparseableReply,
                  fig.figure_id + " " + std::string(TaskTypeName(req.type)) + ": " + parsed.problem,
                  {{"stage", 4}, {"reply", retry.reply.text}});
    }
    r.provenance.flags.push_back("stage4_repaired");
  }
  auto& d = *parsed.draft;
  r.context = d.context;
  r.question = d.question;
  r.answer = d.answer;
  if (choice) {
    std::vector<std::string> opts = d.options;
    SeededRng rng(DeriveSeed(req.seed, "options"));
    rng.Shuffle(opts);
    std::size_t correct = 0;
    for (std::size_t k = 0; k < opts.size(); ++k) {
      if (opts[k] == d.answer) correct = k;
    }
    r.options = opts;
    r.correct_option = std::string(1, static_cast<char>('A' + correct));
  }
  return out;
}

LeakageReport Stage5Refine(InstructionRecord& record, gateway::ModelGateway& gw,
                           const gateway::EndpointConfig& endpoint, const gateway::Sampling& sampling,
                           const Stage5Options& options) {
  LeakageReport report;
  if (IsRefinementExempt(record.task_type)) return report;
  report.initial_ngrams = SharedNgrams(record.context, record.answer, options.ngram);
  auto leaked = report.initial_ngrams;
  const std::string original = record.context;
  while (!leaked.empty() && report.iterations_used < options.max_iterations) {
    ++report.iterations_used;
    auto res = gw.Invoke(endpoint, Stage5Call(record.context, record.question, record.answer, leaked, sampling));
    record.provenance.prompt_digests["5:" + std::to_string(report.iterations_used)] = res.digest;
    if (auto ctx = ParseRefinedContext(res.reply.text)) record.context = *ctx;
    leaked = SharedNgrams(record.context, record.answer, options.ngram);
  }
  if (!leaked.empty()) {
    record.context = HardRedact(record.context, record.answer, options.ngram);
    report.hard_redacted = true;
    leaked = SharedNgrams(record.context, record.answer, options.ngram);
  }
  report.overlapping_ngrams = leaked;
  record.provenance.refined = record.context != original;
  return report;
}

}  // namespace medforge::forge
