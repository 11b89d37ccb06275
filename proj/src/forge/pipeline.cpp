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

#include "medforge/forge/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <deque>
#include <future>

#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/common/thread_pool.hpp"
#include "medforge/figure/raster.hpp"

namespace medforge::forge {
namespace fs = std::filesystem;

int ForgeConfig::Quota(TaskType t) const {
  auto it = quotas.find(t);
  return it == quotas.end() ? 1 : it->second;
}

const gateway::EndpointConfig& ForgeConfig::Endpoint(const std::string& role) const {
  auto it = endpoints.find(role);
  if (it == endpoints.end()) throw Error(Errc::kInvalidConfig, "no endpoint configured for " + role);
  return it->second;
}

gateway::Sampling ForgeConfig::EffectiveSampling() const {
  gateway::Sampling s = sampling;
  if (!s.seed) s.seed = static_cast<std::int64_t>(seed & 0x7fffffffffffffffULL);
  return s;
}

nlohmann::json ForgeConfig::ToJson() const {
  nlohmann::json eps = nlohmann::json::object();
  for (const auto& [role, ep] : endpoints) eps[role] = gateway::ToJson(ep);
  nlohmann::json q = nlohmann::json::object();
  for (auto t : kAllTaskTypes) q[std::string(TaskTypeName(t))] = Quota(t);
  const auto s = EffectiveSampling();
  return {{"endpoints", eps},
          {"sampling", {{"temperature", s.temperature}, {"max_tokens", s.max_tokens}, {"seed", *s.seed}}},
          {"seed", seed},
          {"quotas", q},
          {"leakage_ngram", leakage_ngram},
          {"max_refinements", max_refinements},
          {"stage3_tolerance", stage3_tolerance},
          {"spatial_tau", spatial_tau}};
}

nlohmann::json RunReport::ToJson() const {
  return {{"figures_total", figures_total},
          {"figures_completed", figures_completed},
          {"records_total", records_total},
          {"records_by_type", records_by_type},
          {"figure_failures", figure_failures},
          {"panel_failures", panel_failures},
          {"leakage",
           {{"records_checked", leakage_checked},
            {"initially_leaking", leakage_initial},
            {"resolved_by_model", leakage_model_resolved},
            {"hard_redacted", leakage_hard_redacted}}},
          {"schema_violations", schema_violations},
          {"stopped_early", stopped_early},
          {"resumed", resumed},
          {"gateway", gateway_stats.is_null() ? nlohmann::json::object() : gateway_stats}};
}

RunReport RunReport::FromJson(const nlohmann::json& j) {
  RunReport r;
  r.figures_total = j.at("figures_total");
  r.figures_completed = j.at("figures_completed");
  r.records_total = j.at("records_total");
  r.records_by_type = j.at("records_by_type").get<std::map<std::string, std::size_t>>();
  r.figure_failures = j.at("figure_failures").get<std::vector<nlohmann::json>>();
  r.panel_failures = j.at("panel_failures");
  const auto& l = j.at("leakage");
  r.leakage_checked = l.at("records_checked");
  r.leakage_initial = l.at("initially_leaking");
  r.leakage_model_resolved = l.at("resolved_by_model");
  r.leakage_hard_redacted = l.at("hard_redacted");
  r.schema_violations = j.value("schema_violations", std::size_t{0});
  return r;
}

std::string SafeComponent(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

namespace {

struct FigureOutcome {
  std::string key;
  bool ok = false;
  std::string dataset_lines;
  std::string figure_line;
  nlohmann::json failure;
  std::map<std::string, std::size_t> records_by_type;
  std::size_t records = 0;
  std::size_t panel_failures = 0;
  std::size_t leakage_checked = 0;
  std::size_t leakage_initial = 0;
  std::size_t leakage_model_resolved = 0;
  std::size_t leakage_hard_redacted = 0;
};

std::string MimeFor(const std::string& ext) {
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  return "image/png";
}

FigureOutcome ProcessFigure(const corpus::GatedFigure& g, const ForgeConfig& config, gateway::ModelGateway& gw,
                            const fs::path& output_dir) {
  FigureOutcome out;
  out.key = g.Key();
  const auto& fig = g.record;
  const auto sampling = config.EffectiveSampling();
  const std::uint64_t figure_seed = DeriveSeed(config.seed, out.key);

  const fs::path source = g.package_dir / g.graphic_path;
  const auto raster = figure::LoadImage(source);
  const fs::path rel_dir = fs::path("images") / SafeComponent(g.article_id) / SafeComponent(fig.figure_id);
  fs::create_directories(output_dir / rel_dir);

  ImageRef compound;
  std::string ext = source.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  compound.path = (rel_dir / ("figure" + ext)).generic_string();
  compound.bytes = files::ReadBytes(source);
  compound.mime = MimeFor(ext);
  files::WriteAtomic(output_dir / compound.path, compound.bytes);

  std::vector<std::vector<std::uint8_t>> crop_bytes;
  std::map<std::string, ImageRef> crops;
  nlohmann::json panel_images = nlohmann::json::object();
  for (const auto& p : fig.panels) {
    ImageRef ref;
    ref.panel_id = p.panel_id;
    ref.path = (rel_dir / (SafeComponent(p.panel_id) + ".png")).generic_string();
    ref.bytes = figure::EncodePng(figure::Crop(raster, p.x, p.y, p.width, p.height));
    files::WriteAtomic(output_dir / ref.path, ref.bytes);
    crop_bytes.push_back(ref.bytes);
    panel_images[p.panel_id] = ref.path;
    crops.emplace(p.panel_id, std::move(ref));
  }

  const auto& ep1 = config.Endpoint("stage1");
  const auto& ep2 = config.Endpoint("stage2");
  const auto& ep3 = config.Endpoint("stage3");
  const auto& ep4 = config.Endpoint("stage4");
  const auto& ep5 = config.Endpoint("stage5");

  ContextBundle bundle;
  bundle.figure_id = fig.figure_id;
  bundle.caption = fig.caption;
  std::vector<std::string> figure_flags;

  auto s1 = Stage1Summarize(g.inline_text, fig.caption, gw, ep1, sampling);
  bundle.inline_summary = s1.summary;
  if (s1.empty_inline_text) figure_flags.push_back("empty_inline_text");

  auto s2 = Stage2Complement(fig.caption, bundle.inline_summary, gw, ep2, sampling);
  bundle.knowledge_notes = s2.notes;
  if (s2.repaired) figure_flags.push_back("stage2_repaired");

  auto s3 = Stage3DescribePanels(fig, crop_bytes, bundle.inline_summary, gw, ep3, sampling, config.stage3_tolerance);
  bundle.panel_descriptions = s3.descriptions;
  out.panel_failures = s3.failures.size();
  if (!s3.failures.empty()) {
    std::string ids;
    for (const auto& [id, err] : s3.failures) ids += (ids.empty() ? "" : ",") + id;
    figure_flags.push_back("partial_panels:" + ids);
  }

  std::map<std::string, std::string> base_digests = {{"1", s1.digest}, {"2", s2.digest}};
  for (const auto& [id, d] : s3.digests) base_digests["3:" + id] = d;

  for (auto type : kAllTaskTypes) {
    const int quota = config.Quota(type);
    if (IsMultiImage(type) && bundle.panel_descriptions.size() < 2) continue;
    for (int n = 0; n < quota; ++n) {
      const std::string type_name(TaskTypeName(type));
      Stage4Request req;
      req.type = type;
      req.variant = n;
      req.seed = DeriveSeed(figure_seed, type_name + "/" + std::to_string(n));
      req.bundle = &bundle;
      req.figure = &fig;
      req.crops = crops;
      req.compound = compound;
      req.spatial_tau = config.spatial_tau;
      auto s4 = Stage4Generate(req, gw, ep4, sampling);
      auto& rec = s4.record;
      rec.record_id = g.article_id + "/" + fig.figure_id + "/" + type_name + "/" + std::to_string(n);
      auto& p = rec.provenance;
      p.article_id = g.article_id;
      p.figure_id = fig.figure_id;
      p.stage_model_ids = {{"1", ep1.endpoint_id},
                           {"2", ep2.endpoint_id},
                           {"3", ep3.endpoint_id},
                           {"4", type == TaskType::kMultiImageSpatial ? "template" : ep4.endpoint_id},
                           {"5", ep5.endpoint_id}};
      for (const auto& [k, d] : base_digests) p.prompt_digests[k] = d;
      if (!s4.digest.empty()) p.prompt_digests["4"] = s4.digest;
      std::vector<std::string> flags = figure_flags;
      flags.insert(flags.end(), p.flags.begin(), p.flags.end());
      p.flags = std::move(flags);

      auto leak = Stage5Refine(rec, gw, ep5, sampling, {config.leakage_ngram, config.max_refinements});
      if (!IsRefinementExempt(type)) {
        ++out.leakage_checked;
        if (!leak.initial_ngrams.empty()) {
          ++out.leakage_initial;
          if (leak.hard_redacted) {
            ++out.leakage_hard_redacted;
          } else {
            ++out.leakage_model_resolved;
          }
        }
        if (rec.context.empty() && !leak.initial_ngrams.empty()) p.flags.push_back("context_emptied");
      }
      p.leakage = leak;

      auto violations = ValidateRecord(rec);
      if (!violations.empty()) {
        throw Error(Errc::kInvalidArgument, rec.record_id + ": " + violations.front(), {{"violations", violations}});
      }
      out.dataset_lines += ToJsonLine(rec);
      ++out.records_by_type[type_name];
      ++out.records;
    }
  }

  nlohmann::json fl;
  fl["key"] = out.key;
  fl["article_id"] = g.article_id;
  fl["figure_id"] = fig.figure_id;
  fl["image"] = compound.path;
  fl["panel_images"] = panel_images;
  fl["figure"] = figure::ToJson(fig);
  fl["medical_ratio"] = g.medical_ratio;
  fl["summary"] = bundle.inline_summary;
  fl["panel_descriptions"] = bundle.panel_descriptions;
  out.figure_line = fl.dump() + "\n";
  out.ok = true;
  return out;
}

FigureOutcome SafeProcess(const corpus::GatedFigure& g, const ForgeConfig& config, gateway::ModelGateway& gw,
                          const fs::path& output_dir) {
  try {
    return ProcessFigure(g, config, gw, output_dir);
  } catch (const Error& e) {
    if (e.code() == Errc::kInvalidConfig || e.code() == Errc::kIoError) throw;
    spdlog::warn("figure {} failed: {}", g.Key(), e.what());
    FigureOutcome out;
    out.key = g.Key();
    out.failure = {{"figure", g.Key()}, {"error", std::string(ErrcName(e.code()))}, {"message", e.message()}};
    return out;
  }
}

std::string RunDigest(const std::vector<corpus::GatedFigure>& figures, const ForgeConfig& config) {
  nlohmann::json j = config.ToJson();
  nlohmann::json keys = nlohmann::json::array();
  for (const auto& f : figures) keys.push_back(f.Key());
  j["figures"] = keys;
  return Sha256Hex(j.dump());
}

}  // namespace

RunReport RunPipeline(const std::vector<corpus::GatedFigure>& figures, const ForgeConfig& config,
                      gateway::ModelGateway& gw, const PipelineOptions& options) {
  for (const char* role : {"stage1", "stage2", "stage3", "stage4", "stage5"}) gateway::Validate(config.Endpoint(role));
  const fs::path& dir = options.output_dir;
  fs::create_directories(dir);
  const fs::path dataset = dir / kDatasetFile;
  const fs::path figures_file = dir / kFiguresFile;
  const fs::path checkpoint_dir = options.checkpoint_dir.empty() ? dir : options.checkpoint_dir;
  fs::create_directories(checkpoint_dir);
  const fs::path checkpoint = checkpoint_dir / kCheckpointFile;
  const std::string run_digest = RunDigest(figures, config);

  RunReport report;
  std::size_t next = 0;
  std::uintmax_t dataset_bytes = 0, figures_bytes = 0;
  if (options.resume && fs::exists(checkpoint)) {
    try {
      auto cp = nlohmann::json::parse(files::ReadText(checkpoint));
      if (cp.at("run_digest").get<std::string>() == run_digest) {
        next = cp.at("next_index");
        dataset_bytes = cp.at("dataset_bytes");
        figures_bytes = cp.at("figures_bytes");
        report = RunReport::FromJson(cp.at("report"));
        report.resumed = true;
        spdlog::info("resuming at figure {} of {}", next, figures.size());
      } else {
        spdlog::info("checkpoint belongs to a different run; starting over");
      }
    } catch (const std::exception& e) {
      spdlog::warn("checkpoint unreadable ({}); starting over", e.what());
    }
  }
  files::Truncate(dataset, dataset_bytes);
  files::Truncate(figures_file, figures_bytes);
  report.figures_total = figures.size();

  auto save_checkpoint = [&] {
    nlohmann::json cp = {{"run_digest", run_digest},
                         {"next_index", next},
                         {"dataset_bytes", dataset_bytes},
                         {"figures_bytes", figures_bytes},
                         {"report", report.ToJson()}};
    files::WriteAtomic(checkpoint, cp.dump(2));
  };

  const std::size_t workers = std::max<std::size_t>(1, config.workers);
  {
    ThreadPool pool(workers);
    std::deque<std::pair<std::size_t, std::future<FigureOutcome>>> inflight;
    std::size_t submitted = next;
    auto fill = [&] {
      while (submitted < figures.size() && inflight.size() < workers * 2) {
        const std::size_t i = submitted++;
        inflight.emplace_back(i, pool.Submit([&, i] { return SafeProcess(figures[i], config, gw, dir); }));
      }
    };
    fill();
    while (!inflight.empty()) {
      if (options.stop_after && next >= *options.stop_after) {
        report.stopped_early = true;
        break;
      }
      auto outcome = inflight.front().second.get();
      inflight.pop_front();
      if (outcome.ok) {
        files::Append(dataset, outcome.dataset_lines);
        files::Append(figures_file, outcome.figure_line);
        dataset_bytes += outcome.dataset_lines.size();
        figures_bytes += outcome.figure_line.size();
        report.records_total += outcome.records;
        for (const auto& [t, c] : outcome.records_by_type) report.records_by_type[t] += c;
        report.panel_failures += outcome.panel_failures;
        report.leakage_checked += outcome.leakage_checked;
        report.leakage_initial += outcome.leakage_initial;
        report.leakage_model_resolved += outcome.leakage_model_resolved;
        report.leakage_hard_redacted += outcome.leakage_hard_redacted;
      } else {
        report.figure_failures.push_back(outcome.failure);
      }
      ++next;
      report.figures_completed = next;
      save_checkpoint();
      fill();
    }
    for (auto& [i, f] : inflight) f.wait();
  }

  const auto check = ValidateDatasetFile(dataset);
  report.schema_violations = check.violations.size();
  for (const auto& v : check.violations) spdlog::error("schema: {}", v);
  report.gateway_stats = gw.StatsJson();
  files::WriteAtomic(dir / kRunReportFile, report.ToJson().dump(2));
  return report;
}

nlohmann::json PlanCalls(const std::vector<corpus::GatedFigure>& figures, const ForgeConfig& config) {
  std::size_t s3 = 0, s4 = 0, s5 = 0;
  std::map<std::string, std::size_t> records;
  for (const auto& g : figures) {
    s3 += g.record.panels.size();
    for (auto t : kAllTaskTypes) {
      if (IsMultiImage(t) && g.record.panels.size() < 2) continue;
      const auto q = static_cast<std::size_t>(std::max(0, config.Quota(t)));
      records[std::string(TaskTypeName(t))] += q;
      if (t != TaskType::kMultiImageSpatial) s4 += q;
      if (!IsRefinementExempt(t)) s5 += q * static_cast<std::size_t>(config.max_refinements);
    }
  }
  std::size_t total_records = 0;
  for (const auto& [t, c] : records) total_records += c;
  return {{"figures", figures.size()},
          {"calls", {{"stage1", figures.size()}, {"stage2", figures.size()}, {"stage3", s3}, {"stage4", s4},
                     {"stage5_max", s5}}},
          {"records_by_type", records},
          {"records_total", total_records}};
}

}  // namespace medforge::forge
