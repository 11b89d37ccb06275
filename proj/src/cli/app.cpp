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

#include "medforge/cli/app.hpp"

#include <csignal>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "medforge/bench/export.hpp"
#include "medforge/bench/review_service.hpp"
#include "medforge/cli/corpus_stats.hpp"
#include "medforge/cli/run_config.hpp"
#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/corpus/ingest.hpp"
#include "medforge/eval/report.hpp"
#include "medforge/quality/ratings.hpp"

namespace medforge::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool mock = false;
  std::optional<std::size_t> workers;
};

RunConfig Load(const Globals& g) {
  RunConfig c = g.config.empty() ? RunConfig{} : LoadRunConfig(g.config);
  if (g.seed) {
    c.seed = *g.seed;
    c.benchmark.seed = *g.seed;
  }
  if (g.workers) {
    if (*g.workers < 1) throw Error(Errc::kInvalidConfig, "--workers must be >= 1");
    c.workers = *g.workers;
  }
  c.force_mock = c.force_mock || g.mock;
  return c;
}

const fs::path& Require(const fs::path& p, const char* name) {
  if (p.empty()) throw Error(Errc::kInvalidConfig, std::string(name) + " is not set (config or flag)");
  return p;
}

fs::path Or(const std::string& flag, const fs::path& fallback) { return flag.empty() ? fallback : fs::path(flag); }

corpus::IngestResult Ingest(const RunConfig& c) {
  corpus::IngestOptions opts;
  opts.gates = c.gates;
  opts.workers = c.workers;
  const auto& dir = Require(c.corpus_dir, "corpus_dir");
  if (!fs::is_directory(dir)) throw Error(Errc::kIoError, "corpus_dir " + dir.string() + " is not a directory");
  return corpus::IngestCorpus(dir, opts);
}

void PrintJson(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

std::vector<forge::InstructionRecord> Filter(std::vector<forge::InstructionRecord> records,
                                             const std::vector<std::string>& types) {
  if (types.empty()) return records;
  std::set<forge::TaskType> keep;
  for (const auto& t : types) {
    auto tt = forge::TaskTypeFromName(t);
    if (!tt) throw Error(Errc::kInvalidArgument, "unknown task type '" + t + "'");
    keep.insert(*tt);
  }
  std::vector<forge::InstructionRecord> out;
  for (auto& r : records) {
    if (keep.count(r.task_type)) out.push_back(std::move(r));
  }
  return out;
}

bench::ReviewServer* g_server = nullptr;

extern "C" void StopServer(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"medforge: biomedical multi-image instruction data toolkit", "medforge"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "RunConfig JSON file");
  app.add_option("--seed", g.seed, "Override the run seed");
  app.add_flag("--mock", g.mock, "Serve every endpoint from the deterministic mock backend");
  app.add_option("--workers", g.workers, "Worker count");

  std::string output_flag, corpus_flag;
  auto add_dirs = [&](CLI::App* sub) {
    sub->add_option("--corpus", corpus_flag, "Corpus directory (overrides config)");
    sub->add_option("--output", output_flag, "Output directory (overrides config)");
  };

  auto* ingest = app.add_subcommand("ingest", "Gate the corpus and write the gated index and rejection report");
  add_dirs(ingest);

  auto* forge_cmd = app.add_subcommand("forge", "Run the five-stage generation pipeline");
  add_dirs(forge_cmd);
  bool dry_run = false, no_resume = false;
  std::string stage = "all";
  std::optional<std::size_t> stop_after;
  forge_cmd->add_flag("--dry-run", dry_run, "Print planned model calls and exit");
  forge_cmd->add_option("--stage", stage, "Stage to plan: 1..5 or all")
      ->check(CLI::IsMember({"1", "2", "3", "4", "5", "all"}));
  forge_cmd->add_option("--stop-after", stop_after, "Stop after this many figures (resumable)");
  forge_cmd->add_flag("--no-resume", no_resume, "Ignore an existing checkpoint");

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark curation");
  bench_cmd->require_subcommand(1);
  std::string dataset_flag, log_flag, out_flag;
  auto* sample = bench_cmd->add_subcommand("sample", "Draw the candidate pool into the curation log");
  add_dirs(sample);
  sample->add_option("--dataset", dataset_flag, "Dataset JSONL (default: <output>/dataset.jsonl)");
  sample->add_option("--log", log_flag, "Curation event log (default: <output>/bench/curation_log.jsonl)");
  auto* exp = bench_cmd->add_subcommand("export", "Export the accepted benchmark");
  add_dirs(exp);
  exp->add_option("--dataset", dataset_flag, "Source dataset JSONL");
  exp->add_option("--log", log_flag, "Curation event log");
  exp->add_option("--out", out_flag, "Export directory (default: <output>/bench/export)");

  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against a dataset");
  add_dirs(eval_cmd);
  std::string predictions, pred_a, pred_b;
  std::vector<std::string> task_types;
  eval_cmd->add_option("--dataset", dataset_flag, "Reference dataset JSONL");
  eval_cmd->add_option("--predictions", predictions, "Predictions JSONL")->required();
  eval_cmd->add_option("--task-type", task_types, "Only these task types");
  eval_cmd->add_option("--out", out_flag, "Also write the report here");

  auto* judge_cmd = app.add_subcommand("judge", "Pairwise judge two prediction sets");
  add_dirs(judge_cmd);
  judge_cmd->add_option("--dataset", dataset_flag, "Reference dataset JSONL");
  judge_cmd->add_option("--a", pred_a, "Predictions of system A")->required();
  judge_cmd->add_option("--b", pred_b, "Predictions of system B")->required();
  judge_cmd->add_option("--task-type", task_types, "Only these task types");
  judge_cmd->add_option("--out", out_flag, "Also write the report here");

  auto* stats = app.add_subcommand("stats", "Dataset and rating statistics");
  stats->require_subcommand(1);
  std::string ratings_path, icc_model;
  auto* stats_ratings = stats->add_subcommand("ratings", "Rater agreement over a ratings CSV");
  stats_ratings->add_option("--ratings", ratings_path, "Ratings CSV")->required();
  stats_ratings->add_option("--icc-model", icc_model, "icc2_1, icc3_1 or icc1_1");
  auto* stats_corpus = stats->add_subcommand("corpus", "Characteristics of the gated corpus");
  add_dirs(stats_corpus);
  bool no_tags = false;
  stats_corpus->add_flag("--no-tags", no_tags, "Skip modality/anatomy tagging");

  auto* review = app.add_subcommand("review", "Review service");
  review->require_subcommand(1);
  auto* serve = review->add_subcommand("serve", "Serve the review API");
  add_dirs(serve);
  std::string host = "127.0.0.1", static_dir, dataset_dir;
  int port = 8080;
  serve->add_option("--log", log_flag, "Curation event log");
  serve->add_option("--dataset-dir", dataset_dir, "Forge output directory with figures.jsonl and images");
  serve->add_option("--static", static_dir, "Static UI bundle served at /");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 = any)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << nlohmann::json{{"error", "Usage"}, {"message", e.what()}, {"detail", nullptr}}.dump() << "\n";
    return 2;
  }

  try {
    RunConfig c = Load(g);
    if (!corpus_flag.empty()) c.corpus_dir = corpus_flag;
    if (!output_flag.empty()) c.output_dir = output_flag;
    Validate(c);
    const fs::path dataset = Or(dataset_flag, c.output_dir / forge::kDatasetFile);
    const fs::path log = Or(log_flag, c.output_dir / "bench" / "curation_log.jsonl");

    if (*ingest) {
      auto result = Ingest(c);
      const auto& dir = Require(c.output_dir, "output_dir");
      fs::create_directories(dir);
      std::string index;
      for (const auto& f : result.figures) index += result.IndexJson(f).dump() + "\n";
      files::WriteAtomic(dir / "gated_index.jsonl", index);
      const auto report = result.ReportJson();
      files::WriteAtomic(dir / "ingest_report.json", report.dump(2) + "\n");
      PrintJson(out, report);
      return 0;
    }

    if (*forge_cmd) {
      auto result = Ingest(c);
      const auto fc = c.Forge();
      if (dry_run) {
        auto plan = forge::PlanCalls(result.figures, fc);
        if (stage != "all") {
          const auto key = stage == "5" ? std::string("stage5_max") : "stage" + stage;
          plan["calls"] = {{key, plan["calls"][key]}};
        }
        plan["network_calls"] = 0;
        PrintJson(out, plan);
        return 0;
      }
      if (stage != "all") {
        throw Error(Errc::kInvalidArgument, "--stage selects a single stage for --dry-run only; runs execute all stages");
      }
      gateway::ModelGateway gw(c.Gateway());
      forge::PipelineOptions po;
      po.output_dir = Require(c.output_dir, "output_dir");
      po.checkpoint_dir = c.checkpoint_dir;
      po.resume = !no_resume;
      po.stop_after = stop_after;
      auto report = forge::RunPipeline(result.figures, fc, gw, po);
      auto j = report.ToJson();
      j["ingest"] = {{"articles_seen", result.articles_seen},
                     {"figures_seen", result.figures_seen},
                     {"figures_gated", result.figures.size()},
                     {"rejections", result.RejectionCounts()}};
      PrintJson(out, j);
      if (report.schema_violations > 0) {
        throw Error(Errc::kMalformedReply, "dataset failed schema validation",
                    {{"schema_violations", report.schema_violations}});
      }
      if (report.stopped_early) {
        err << nlohmann::json{{"error", "IncompleteRun"},
                              {"message", "run stopped before every figure was processed; rerun to resume"},
                              {"detail", {{"figures_completed", report.figures_completed},
                                          {"figures_total", report.figures_total}}}}
                   .dump()
            << "\n";
        return 3;
      }
      return 0;
    }

    if (*sample) {
      bench::CurationStore store(log);
      if (!store.Items().empty()) {
        throw Error(Errc::kInvalidArgument, log.string() + " already holds a sampled pool");
      }
      auto pool = bench::SampleCandidates(forge::ReadDataset(dataset), c.benchmark);
      fs::create_directories(log.parent_path());
      store.AddItems(pool);
      std::map<std::string, int> per;
      for (const auto& r : pool) ++per[std::string(forge::TaskTypeName(r.task_type))];
      PrintJson(out, {{"log", log.string()}, {"items", pool.size()}, {"per_category", per},
                      {"spec", c.benchmark.ToJson()}});
      return 0;
    }

    if (*exp) {
      bench::CurationStore store(log);
      const auto digest = Sha256Hex(files::ReadText(dataset));
      auto result = bench::ExportBenchmark(store.Items(), c.benchmark,
                                           Or(out_flag, c.output_dir / "bench" / "export"), digest);
      PrintJson(out, {{"dataset", result.dataset.string()},
                      {"manifest", result.manifest.string()},
                      {"total", result.total},
                      {"counts", result.manifest_json["counts"]}});
      return 0;
    }

    if (*eval_cmd) {
      auto records = Filter(forge::ReadDataset(dataset), task_types);
      auto preds = eval::ReadPredictions(predictions);
      std::optional<gateway::EndpointConfig> bert, sts;
      if (c.HasEndpoint("bertscore") || c.force_mock) bert = c.Endpoint("bertscore");
      if (c.HasEndpoint("sts") || c.force_mock) sts = c.Endpoint("sts");
      std::optional<gateway::ModelGateway> gw;
      if (bert || sts) gw.emplace(c.Gateway());
      eval::EvalEndpoints eps{bert ? &*bert : nullptr, sts ? &*sts : nullptr};
      auto report = eval::EvaluatePredictions(records, preds, gw ? &*gw : nullptr, eps);
      if (!out_flag.empty()) files::WriteAtomic(out_flag, report.dump(2) + "\n");
      PrintJson(out, report);
      return 0;
    }

    if (*judge_cmd) {
      auto records = Filter(forge::ReadDataset(dataset), task_types);
      gateway::ModelGateway gw(c.Gateway());
      const auto judge = c.Endpoint("judge");
      auto report = eval::JudgePredictions(records, eval::ReadPredictions(pred_a), eval::ReadPredictions(pred_b), gw,
                                           judge, c.seed);
      if (!out_flag.empty()) files::WriteAtomic(out_flag, report.dump(2) + "\n");
      PrintJson(out, report);
      return 0;
    }

    if (*stats_ratings) {
      const auto model = icc_model.empty() ? c.icc_model : quality::IccModelFromName(icc_model);
      auto report = quality::ComputeAgreementReport(quality::ReadRatingsCsv(ratings_path), model);
      auto j = report.ToJson();
      nlohmann::json table = nlohmann::json::object();
      for (const auto& [st, cols] : report.per_stage_means) {
        for (const auto& [col, cell] : cols) table[std::to_string(st)][col] = cell.Formatted();
      }
      j["table"] = table;
      PrintJson(out, j);
      return 0;
    }

    if (*stats_corpus) {
      auto result = Ingest(c);
      std::optional<gateway::ModelGateway> gw;
      std::optional<gateway::EndpointConfig> tagger;
      if (!no_tags) {
        tagger = c.Endpoint("tagger");
        gw.emplace(c.Gateway());
      }
      auto s = ComputeCorpusStats(result.figures, gw ? &*gw : nullptr, tagger ? &*tagger : nullptr);
      PrintJson(out, s.ToJson());
      return 0;
    }

    if (*serve) {
      bench::CurationStore store(log);
      bench::ReviewOptions ro;
      ro.dataset_dir = Or(dataset_dir, c.output_dir);
      ro.static_dir = static_dir;
      bench::ReviewApi api(store, ro);
      bench::ReviewServer server(api);
      const int bound = server.Bind(host, port);
      out << nlohmann::json{{"listening", host + ":" + std::to_string(bound)}, {"items", store.Items().size()}}.dump()
          << std::endl;
      g_server = &server;
      std::signal(SIGINT, StopServer);
      std::signal(SIGTERM, StopServer);
      server.Listen();
      g_server = nullptr;
      return 0;
    }
  } catch (const Error& e) {
    err << nlohmann::json{{"error", std::string(ErrcName(e.code()))}, {"message", e.message()}, {"detail", e.detail()}}
               .dump()
        << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", "Internal"}, {"message", e.what()}, {"detail", nullptr}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace medforge::cli
