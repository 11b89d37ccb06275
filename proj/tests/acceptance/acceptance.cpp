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

// Acceptance run: one PASS/FAIL line per primary criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "fixtures.hpp"
#include "medforge/bench/curation.hpp"
#include "medforge/bench/export.hpp"
#include "medforge/bench/sampler.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/corpus/ingest.hpp"
#include "medforge/eval/judge.hpp"
#include "medforge/eval/multichoice.hpp"
#include "medforge/eval/report.hpp"
#include "medforge/eval/text_metrics.hpp"
#include "medforge/figure/spatial.hpp"
#include "medforge/forge/leakage.hpp"
#include "medforge/forge/stages.hpp"
#include "medforge/gateway/clock.hpp"
#include "medforge/gateway/gateway.hpp"
#include "medforge/quality/icc.hpp"
#include "synth_corpus.hpp"

namespace fs = std::filesystem;
using namespace medforge;
using testing::SynthArticle;
using testing::SynthFigure;
using testing::TempDir;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

// ---- gate fidelity -------------------------------------------------------

Outcome GateFidelity() {
  const auto start = Clock::now();
  TempDir dir("gates");
  auto articles = testing::CleanCorpus(30, 11);
  std::map<std::string, std::string> expected;  // "<article>/<figure or empty>" -> rule
  auto& a = articles;

  a[0].figures[0].panels = 2;
  a[0].figures[0].cols = 2;
  a[0].figures[0].caption_words = 50;
  expected[a[0].article_id + "/F1"] = "compound_caption_length";

  a[1].figures[0].panels = 2;
  a[1].figures[0].cols = 2;
  a[1].figures[0].caption_words = 51;

  a[2].figures[0].short_sub_caption = 9;
  expected[a[2].article_id + "/F1"] = "sub_caption_length";

  a[3].figures[0].short_sub_caption = 10;

  a[4].figures[0] = SynthFigure{"F1", 10, 5, 96, 1, true, 12, 150, std::nullopt, 40, 404};
  expected[a[4].article_id + "/F1"] = "medical_ratio";

  a[5].figures[0] = SynthFigure{"F1", 12, 4, 96, 1, true, 12, 170, std::nullopt, 40, 505};

  a[6].license = "All rights reserved";
  expected[a[6].article_id + "/"] = "license";
  a[7].license = "CC BY-ND";
  expected[a[7].article_id + "/"] = "license";

  a[8].figures[0].panels = 1;
  a[8].figures[0].cols = 1;
  a[8].figures[0].labeled = false;
  a[8].figures[0].caption_words = 30;
  expected[a[8].article_id + "/F1"] = "compound_caption_length";

  SynthFigure second = a[9].figures[0];
  second.figure_id = "F2";
  second.text_seed += 900;
  second.short_sub_caption = 9;
  a[9].figures.push_back(second);
  expected[a[9].article_id + "/F2"] = "sub_caption_length";

  a[10].figures[0] = SynthFigure{"F1", 5, 3, 96, 1, true, 12, 90, std::nullopt, 40, 1010};
  expected[a[10].article_id + "/F1"] = "medical_ratio";

  testing::WriteCorpus(dir.path(), articles);
  testing::RedPanelClassifier classifier;
  corpus::IngestOptions opts;
  opts.classifier = &classifier;
  auto result = corpus::IngestCorpus(dir.path(), opts);
  const double secs = Seconds(start);

  std::map<std::string, std::string> got;
  for (const auto& r : result.rejections) {
    got[r.article_id + "/" + r.figure_id.value_or("")] = std::string(corpus::GateRuleName(r.decision.rule));
  }
  std::size_t figures = 0;
  for (const auto& art : articles) figures += art.figures.size();
  const std::size_t expected_pass = figures - expected.size();  // license articles hold one figure
  const bool ok = got == expected && result.failures.empty() && result.figures.size() == expected_pass &&
                  result.articles_seen == 30 && secs < 5.0;
  std::string detail = std::to_string(got.size()) + "/" + std::to_string(expected.size()) + " planted rejections, " +
                       std::to_string(result.figures.size()) + " accepted, " + Fmt(secs) + "s";
  if (got != expected) {
    for (const auto& [k, v] : expected) {
      if (got[k] != v) detail += "; expected " + k + "=" + v + " got '" + got[k] + "'";
    }
  }
  if (!result.failures.empty()) detail += "; failure: " + result.failures[0].message;
  return {ok, detail};
}

// ---- determinism and resume ---------------------------------------------

Outcome Determinism() {
  const auto start = Clock::now();
  TempDir dir("determinism");
  testing::WriteCorpus(dir / "corpus", testing::CleanCorpus(10, 5));
  auto ingest = corpus::IngestCorpus(dir / "corpus", {});
  if (ingest.figures.size() != 10) return {false, "corpus gated to " + std::to_string(ingest.figures.size())};

  auto run = [&](const std::string& name, std::size_t workers, std::optional<std::size_t> stop, bool resume,
                 const fs::path& cache) {
    gateway::GatewayOptions go;
    go.force_mock = true;
    go.cache_dir = cache;
    gateway::ModelGateway gw(go);
    forge::PipelineOptions po;
    po.output_dir = dir / name;
    po.resume = resume;
    po.stop_after = stop;
    return forge::RunPipeline(ingest.figures, testing::MockForgeConfig(7, workers), gw, po);
  };
  auto read = [&](const std::string& name) {
    return files::ReadText(dir / name / forge::kDatasetFile) + "\x1f" + files::ReadText(dir / name / forge::kFiguresFile);
  };

  auto r1 = run("run1", 4, std::nullopt, false, {});
  auto r2 = run("run2", 1, std::nullopt, false, {});
  auto partial = run("resumed", 4, 5, true, dir / "cache");
  auto finished = run("resumed", 4, std::nullopt, true, dir / "cache");
  const double secs = Seconds(start);

  const auto a = read("run1"), b = read("run2"), c = read("resumed");
  const bool ok = a == b && a == c && partial.stopped_early && partial.figures_completed == 5 && finished.resumed &&
                  r1.records_total > 0 && r1.figure_failures.empty() && r1.schema_violations == 0 && secs < 30.0;
  return {ok, std::to_string(r1.records_total) + " records; rerun " + (a == b ? "identical" : "DIFFERS") +
                  "; resume after 5 " + (a == c ? "identical" : "DIFFERS") + "; " + Fmt(secs) + "s"};
}

// ---- leakage -------------------------------------------------------------

Outcome Leakage() {
  TempDir dir("leakage");
  testing::WriteCorpus(dir / "corpus", testing::CleanCorpus(25, 3));
  auto ingest = corpus::IngestCorpus(dir / "corpus", {});
  gateway::GatewayOptions go;
  go.force_mock = true;
  // Contexts that restate the answer material.
  go.mock.fixtures = {
      {"stage4_multi_subimage",
       "CONTEXT: {sentences:DESCRIPTIONS|CAPTION:2} {sentences:SUMMARY|CAPTION:1}\n"
       "QUESTION: Taking the sub-images together, what do they show about {term:CAPTION:1}?\n"
       "ANSWER: {sentences:DESCRIPTIONS|CAPTION:2}"},
      {"stage4_single_subimage",
       "CONTEXT: {sentences:SUMMARY|CAPTION:1} {section:TARGET_DESCRIPTION|DESCRIPTIONS}\n"
       "QUESTION: What is shown in sub-image {section:TARGET_PANEL}?\n"
       "ANSWER: {section:TARGET_DESCRIPTION|DESCRIPTIONS}"},
      {"stage4_single_image",
       "CONTEXT: {sentences:CAPTION:1} {sentences:SUMMARY|CAPTION:1}\n"
       "QUESTION: What does this figure demonstrate as a whole?\n"
       "ANSWER: {sentences:CAPTION:1}"},
      {"stage4_text_only",
       "CONTEXT: {sentences:KNOWLEDGE|CAPTION:1} {sentences:SUMMARY|CAPTION:1}\n"
       "QUESTION: What is the relevance of {term:KNOWLEDGE|CAPTION:1} in this case?\n"
       "ANSWER: {sentences:KNOWLEDGE|CAPTION:1}"},
      {"stage4_multi_choice",
       "CONTEXT: {sentences:DESCRIPTIONS|CAPTION:1}\n"
       "QUESTION: Which finding is shown in the figure?\n"
       "OPTIONS:\nA) {sentences:DESCRIPTIONS|CAPTION:1}\nB) {term:CAPTION:3}\nC) {term:CAPTION:4}\nD) {term:CAPTION:5}\n"
       "ANSWER: A"},
  };
  gateway::ModelGateway gw(go);
  auto config = testing::MockForgeConfig(19, 4);
  for (auto t : forge::kAllTaskTypes) config.quotas[t] = 2;
  forge::PipelineOptions po;
  po.output_dir = dir / "out";
  auto report = forge::RunPipeline(ingest.figures, config, gw, po);
  auto records = forge::ReadDataset(dir / "out" / forge::kDatasetFile);

  std::size_t checked = 0, leaked = 0, adversarial = 0, exempt = 0, exempt_changed = 0;
  for (const auto& r : records) {
    if (forge::IsRefinementExempt(r.task_type)) {
      ++exempt;
      bool touched = r.provenance.refined;
      for (const auto& [k, v] : r.provenance.prompt_digests) touched = touched || k.rfind("5:", 0) == 0;
      auto copy = r;
      forge::Stage5Refine(copy, gw, config.Endpoint("stage5"), config.EffectiveSampling());
      if (touched || forge::ToJsonLine(copy) != forge::ToJsonLine(r)) ++exempt_changed;
      continue;
    }
    ++checked;
    if (r.provenance.leakage && !r.provenance.leakage->initial_ngrams.empty()) ++adversarial;
    if (!forge::SharedNgrams(r.context, r.answer, 4).empty()) ++leaked;
  }
  const bool ok = checked == 200 && leaked == 0 && adversarial == checked && exempt == 100 && exempt_changed == 0 &&
                  report.figure_failures.empty();
  return {ok, std::to_string(checked) + " non-exempt records (" + std::to_string(adversarial) +
                  " leaking before stage 5), " + std::to_string(leaked) + " leaking after; " +
                  std::to_string(exempt) + " exempt, " + std::to_string(exempt_changed) + " changed; " +
                  std::to_string(report.leakage_hard_redacted) + " hard-redacted"};
}

// ---- spatial -------------------------------------------------------------

std::string BruteRelation(const figure::PanelBox& a, const figure::PanelBox& b, int w, int h, double tau) {
  const double dx = (b.x + b.width / 2.0) - (a.x + a.width / 2.0);
  const double dy = (b.y + b.height / 2.0) - (a.y + a.height / 2.0);
  std::string horiz, vert;
  if (dx > tau * w) horiz = "left";
  if (dx < -tau * w) horiz = "right";
  if (dy > tau * h) vert = "above";
  if (dy < -tau * h) vert = "below";
  if (!horiz.empty() && !vert.empty()) return vert + "_" + horiz;
  if (!horiz.empty()) return horiz + "_of";
  if (!vert.empty()) return vert;
  return "coincident";
}

Outcome Spatial() {
  SeededRng rng(2026);
  const double taus[] = {0.0, 0.05, 0.1, 0.25};
  int agree = 0, antisym = 0;
  const int n = 1000;
  auto box = [&](int w, int h) {
    figure::PanelBox b;
    b.width = 1 + static_cast<int>(rng.Index(static_cast<std::uint64_t>(w)));
    b.height = 1 + static_cast<int>(rng.Index(static_cast<std::uint64_t>(h)));
    b.x = static_cast<int>(rng.Index(static_cast<std::uint64_t>(w - b.width + 1)));
    b.y = static_cast<int>(rng.Index(static_cast<std::uint64_t>(h - b.height + 1)));
    return b;
  };
  for (int i = 0; i < n; ++i) {
    const int w = 20 + static_cast<int>(rng.Index(981));
    const int h = 20 + static_cast<int>(rng.Index(981));
    const double tau = taus[i % 4];
    auto a = box(w, h);
    auto b = i % 25 == 0 ? a : box(w, h);
    const auto rel = figure::DeriveSpatialRelation(a, b, w, h, tau);
    agree += figure::RelationName(rel) == BruteRelation(a, b, w, h, tau);
    antisym += figure::DeriveSpatialRelation(b, a, w, h, tau) == figure::Mirror(rel);
  }
  return {agree == n && antisym == n, std::to_string(agree) + "/1000 agree with brute force, " +
                                          std::to_string(antisym) + "/1000 antisymmetric"};
}

// ---- metric oracles ------------------------------------------------------

Outcome Metrics() {
  auto cases = nlohmann::json::parse(files::ReadText(fs::path(MEDFORGE_FIXTURES) / "text_metrics_oracle.json"));
  double worst = 0;
  for (const auto& c : cases) {
    eval::TextPair p{c["candidate"], c["reference"]};
    const auto rl = eval::RougeLScore(p);
    worst = std::max({worst, std::abs(eval::Bleu4(p) - c["bleu4"].get<double>()),
                      std::abs(rl.precision - c["rouge_precision"].get<double>()),
                      std::abs(rl.recall - c["rouge_recall"].get<double>()),
                      std::abs(rl.f - c["rouge_f"].get<double>())});
  }
  const auto hand = eval::RougeLScore({"the cat on the mat", "the cat sat on the mat"});
  const bool hand_ok = std::abs(hand.f - 10.0 / 11.0) < 1e-15 && hand.precision == 1.0 &&
                       std::abs(hand.recall - 5.0 / 6.0) < 1e-15;
  const std::string same = "Axial MRI shows a hyperintense lesion in the left lobe.";
  const auto id = eval::RougeLScore({same, same});
  const bool identity = eval::Bleu4({same, same}) == 1.0 && id.f == 1.0 && id.precision == 1.0 && id.recall == 1.0;
  std::vector<eval::MultiChoiceItem> items;
  for (int i = 0; i < 50; ++i) {
    const char gold = static_cast<char>('A' + i % 4);
    items.push_back({i < 45 ? gold : static_cast<char>('A' + (i + 1) % 4), gold, 4});
  }
  const double acc = eval::ScoreMultiChoice(items).accuracy;
  const bool ok = cases.size() == 30 && worst <= 1e-9 && hand_ok && identity && std::abs(acc - 90.0) < 1e-12;
  std::ostringstream os;
  os << cases.size() << " oracle pairs, max |diff| " << worst << "; ROUGE-L hand F " << Fmt(hand.f, 6)
     << "; identity " << (identity ? "1.0" : "WRONG") << "; 45/50 accuracy " << Fmt(acc, 1);
  return {ok, os.str()};
}

// ---- ICC -----------------------------------------------------------------

Outcome Icc() {
  auto cases = nlohmann::json::parse(files::ReadText(fs::path(MEDFORGE_FIXTURES) / "icc_oracle.json"));
  double worst = 0, worst_shift = 0;
  for (const auto& c : cases) {
    auto m = c["matrix"].get<quality::ScoreMatrix>();
    const auto ms = quality::TwoWayAnova(m);
    worst = std::max({worst, std::abs(ms.rows - c["msr"].get<double>()), std::abs(ms.columns - c["msc"].get<double>()),
                      std::abs(ms.error - c["mse"].get<double>())});
    for (auto model : {quality::IccModel::kTwoWayRandomAbsolute, quality::IccModel::kTwoWayMixedConsistency,
                       quality::IccModel::kOneWayRandom}) {
      const double v = quality::ComputeIcc(m, model).value;
      worst = std::max(worst, std::abs(v - c[std::string(quality::IccModelName(model))].get<double>()));
      auto shifted = m;
      for (auto& row : shifted) {
        for (auto& x : row) x += 17.25;
      }
      worst_shift = std::max(worst_shift, std::abs(quality::ComputeIcc(shifted, model).value - v));
    }
  }
  quality::ScoreMatrix agree(6, std::vector<double>(3, 5.0));
  const auto all = quality::ComputeIcc(agree);
  const bool ok = cases.size() == 20 && worst <= 1e-9 && worst_shift <= 1e-9 && all.value == 1.0;
  std::ostringstream os;
  os << cases.size() << " oracle matrices, max |diff| " << worst << "; translation drift " << worst_shift
     << "; all-agree " << all.value;
  return {ok, os.str()};
}

// ---- benchmark balance ---------------------------------------------------

Outcome Balance() {
  TempDir dir("bench");
  bench::BenchmarkSpec spec;
  spec.seed = 3;
  const auto pool = bench::SampleCandidates(testing::BalancedRecords(80), spec);

  bench::CurationStore store;
  auto ids = store.AddItems(pool);
  for (const auto& id : ids) {
    store.SubmitVerdict(id, {"r1", bench::Decision::kAccept, std::nullopt, 0, false});
    store.SubmitVerdict(id, {"r2", bench::Decision::kAccept, std::nullopt, 0, false});
  }
  auto exported = bench::ExportBenchmark(store.Items(), spec, dir / "full", "0");
  auto lines = forge::ReadDataset(exported.dataset);
  std::map<std::string, int> per;
  for (const auto& r : lines) ++per[std::string(forge::TaskTypeName(r.task_type))];
  bool balanced = lines.size() == 300 && per.size() == 6;
  for (const auto& [k, v] : per) balanced = balanced && v == 50;

  bench::CurationStore short_store;
  auto short_ids = short_store.AddItems(pool);
  int mc_accepted = 0;
  for (std::size_t i = 0; i < short_ids.size(); ++i) {
    auto d = bench::Decision::kAccept;
    if (pool[i].task_type == forge::TaskType::kMultiChoice && mc_accepted++ >= 49) d = bench::Decision::kReject;
    short_store.SubmitVerdict(short_ids[i], {"r1", d, std::nullopt, 0, false});
    short_store.SubmitVerdict(short_ids[i], {"r2", d, std::nullopt, 0, false});
  }
  std::string deficit;
  try {
    bench::ExportBenchmark(short_store.Items(), spec, dir / "short", "0");
  } catch (const Error& e) {
    if (e.code() == Errc::kQuotaUnmet && e.detail()["deficits"].size() == 1 &&
        e.detail()["deficits"].contains("multi_choice")) {
      deficit = e.detail()["deficits"]["multi_choice"].dump();
    }
  }
  const bool ok = balanced && pool.size() == 450 && !deficit.empty() && !fs::exists(dir / "short" / "benchmark.jsonl");
  return {ok, std::to_string(lines.size()) + " exported (" + std::to_string(per.size()) +
                  " categories x 50); multi_choice deficit -> " + (deficit.empty() ? "NOT RAISED" : "QuotaUnmet " + deficit)};
}

// ---- judge ---------------------------------------------------------------

Outcome Judge() {
  gateway::GatewayOptions go;
  go.force_mock = true;
  gateway::ModelGateway gw(go);
  const auto ep = testing::MockEndpoint("mock-judge");
  std::vector<forge::InstructionRecord> records;
  std::map<std::string, std::string> a, b;
  for (int i = 0; i < 60; ++i) {
    auto r = testing::FakeRecord(forge::kAllTaskTypes[i % 6], "PMC" + std::to_string(500 + i), "F1");
    r.answer = "The axial image shows a " + testing::SynthWords(6 + i % 5, static_cast<std::uint64_t>(i)) + " lesion.";
    records.push_back(r);
    const std::string near = r.answer.substr(0, r.answer.size() / 2);
    const std::string far = testing::SynthWords(5, 1000 + static_cast<std::uint64_t>(i));
    switch (i % 3) {
      case 0: a[r.record_id] = r.answer; b[r.record_id] = far; break;
      case 1: a[r.record_id] = far; b[r.record_id] = near; break;
      default: a[r.record_id] = near; b[r.record_id] = near; break;
    }
  }
  double worst_sum = 0;
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    for (std::size_t take : {std::size_t{1}, std::size_t{7}, records.size()}) {
      std::vector<forge::InstructionRecord> sub(records.begin(), records.begin() + static_cast<long>(take));
      auto o = eval::JudgePredictions(sub, a, b, gw, ep, seed)["overall"];
      const double sum = o["win_pct"].get<double>() + o["lose_pct"].get<double>() + o["tie_pct"].get<double>();
      worst_sum = std::max(worst_sum, std::abs(sum - 100.0));
    }
  }
  // Same pairs judged with A shown first and with B shown first.
  std::uint64_t first = 0, second = 0;
  while (eval::JudgeSwaps(first)) ++first;
  second = first + 1;
  while (!eval::JudgeSwaps(second)) ++second;
  std::vector<eval::JudgeVerdict> plain, swapped;
  for (const auto& r : records) {
    plain.push_back(eval::JudgePairwise(r.answer, a[r.record_id], b[r.record_id], gw, ep, first));
    swapped.push_back(eval::JudgePairwise(r.answer, a[r.record_id], b[r.record_id], gw, ep, second));
  }
  const auto sp = eval::Summarize(plain), ss = eval::Summarize(swapped);
  const bool position_invariant = sp.wins == ss.wins && sp.losses == ss.losses && sp.ties == ss.ties &&
                                  !plain[0].swapped && swapped[0].swapped;
  auto ab = eval::JudgePredictions(records, a, b, gw, ep, 5)["overall"];
  auto ba = eval::JudgePredictions(records, b, a, gw, ep, 5)["overall"];
  const bool mirrored = ab["wins"] == ba["losses"] && ab["losses"] == ba["wins"] && ab["ties"] == ba["ties"];
  const bool ok = worst_sum <= 1e-9 && position_invariant && mirrored && sp.wins > 0 && sp.losses > 0 && sp.ties > 0;
  std::ostringstream os;
  os << "win/tie/lose " << Fmt(sp.win_pct, 1) << "/" << Fmt(sp.tie_pct, 1) << "/" << Fmt(sp.lose_pct, 1)
     << ", max |sum-100| " << worst_sum << "; position swap " << (position_invariant ? "invariant" : "CHANGED")
     << "; A<->B " << (mirrored ? "mirrored" : "NOT mirrored");
  return {ok, os.str()};
}

// ---- rate limit ----------------------------------------------------------

class RecordingTransport : public gateway::HttpTransport {
 public:
  gateway::HttpResponse Post(const gateway::HttpRequest& req) override {
    std::lock_guard<std::mutex> lock(mu_);
    const auto n = sent_[req.base_url].size();
    sent_[req.base_url].push_back(req.sent_at);
    gateway::HttpResponse res;
    if (n % 7 == 6) {
      res.status = 429;
      res.headers["Retry-After"] = "1";
      return res;
    }
    res.status = 200;
    res.body = R"({"choices":[{"message":{"content":"ok"}}],"usage":{"prompt_tokens":3,"completion_tokens":1}})";
    return res;
  }
  std::map<std::string, std::vector<gateway::TimePoint>> Sent() {
    std::lock_guard<std::mutex> lock(mu_);
    return sent_;
  }

 private:
  std::mutex mu_;
  std::map<std::string, std::vector<gateway::TimePoint>> sent_;
};

Outcome RateLimit() {
  gateway::FakeClock clock;
  RecordingTransport transport;
  gateway::GatewayOptions go;
  go.clock = &clock;
  go.transport = &transport;
  go.env = [](const std::string&) { return std::optional<std::string>("test-key"); };
  gateway::ModelGateway gw(go);
  std::vector<gateway::EndpointConfig> eps(3);
  const int rpms[] = {5, 9, 13};
  for (int i = 0; i < 3; ++i) {
    eps[i].endpoint_id = "ep" + std::to_string(i);
    eps[i].base_url = "http://ep" + std::to_string(i) + ".test/v1";
    eps[i].model_name = "m";
    eps[i].credential_ref = "TEST_KEY";
    eps[i].requests_per_minute = rpms[i];
    eps[i].max_retries = 3;
  }
  std::atomic<int> errors{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      for (int j = 0; j < 24; ++j) {
        gateway::ModelCall call;
        call.parts.push_back(gateway::Part::Text("worker " + std::to_string(w) + " call " + std::to_string(j)));
        try {
          gw.Invoke(eps[static_cast<std::size_t>((w + j) % 3)], call);
        } catch (const std::exception&) {
          ++errors;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  const auto window = std::chrono::duration_cast<gateway::Duration>(std::chrono::seconds(60));
  std::size_t worst_excess = 0, total = 0;
  std::string peaks;
  for (int i = 0; i < 3; ++i) {
    auto times = transport.Sent()[eps[i].base_url];
    std::sort(times.begin(), times.end());
    total += times.size();
    std::size_t peak = 0;
    for (std::size_t s = 0; s < times.size(); ++s) {
      std::size_t e = s;
      while (e < times.size() && times[e] < times[s] + window) ++e;
      peak = std::max(peak, e - s);
    }
    if (peak > static_cast<std::size_t>(rpms[i])) worst_excess = std::max(worst_excess, peak - rpms[i]);
    peaks += (peaks.empty() ? "" : ", ") + eps[i].endpoint_id + " peak " + std::to_string(peak) + "/" +
             std::to_string(rpms[i]);
  }
  const bool ok = worst_excess == 0 && errors == 0 && total > 192;
  return {ok, std::to_string(total) + " requests from 8 workers (incl. 429 retries); " + peaks};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gate-fidelity", GateFidelity},       {"determinism-resume", Determinism}, {"leakage", Leakage},
      {"spatial-oracle", Spatial},           {"metric-oracles", Metrics},         {"icc-oracle", Icc},
      {"benchmark-balance", Balance},        {"judge-aggregation", Judge},        {"rate-limit", RateLimit},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
