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

#include <gtest/gtest.h>

#include <regex>

#include "fixtures.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/corpus/ingest.hpp"
#include "medforge/forge/leakage.hpp"
#include "medforge/forge/parse.hpp"
#include "medforge/forge/pipeline.hpp"
#include "medforge/forge/stages.hpp"
#include "synth_corpus.hpp"

namespace medforge::forge {
namespace {

TEST(Leakage, SharedNgramsAreCaseFolded) {
  auto shared = SharedNgrams("We saw The Left Lobe Lesion today.", "the left lobe lesion shows enhancement", 4);
  ASSERT_EQ(shared.size(), 1u);
  EXPECT_EQ(shared[0], "the left lobe lesion");
  EXPECT_TRUE(SharedNgrams("a b c", "a b c", 4).empty());
}

TEST(Leakage, HardRedactDropsLeakingSentences) {
  const std::string ctx = "The patient is 54 years old. A mass in the left lobe is enhancing. Follow-up was planned.";
  const std::string ans = "A mass in the left lobe.";
  const auto out = HardRedact(ctx, ans, 4);
  EXPECT_EQ(out, "The patient is 54 years old. Follow-up was planned.");
  EXPECT_TRUE(SharedNgrams(out, ans, 4).empty());
}

TEST(Parse, KnowledgeDeduplicates) {
  auto notes = ParseKnowledge(
      "MOCK-REPLY abc\nCONCEPT: Edema\nEXPLANATION: fluid.\n\nCONCEPT: edema\nEXPLANATION: again.\n\n"
      "CONCEPT: Fibrosis\nEXPLANATION: scarring.");
  ASSERT_EQ(notes.size(), 2u);
  EXPECT_EQ(notes[0].term, "Edema");
  EXPECT_EQ(notes[1].explanation, "scarring.");
}

TEST(Parse, MultiChoiceResolvesLetter) {
  auto p = ParseQa("CONTEXT: c\nQUESTION: q?\nOPTIONS:\nA) one\nB) two\nC) three\nD) four\nANSWER: C", true);
  ASSERT_TRUE(p.draft) << p.problem;
  EXPECT_EQ(p.draft->answer, "three");
  EXPECT_EQ(p.draft->options.size(), 4u);
}

TEST(Parse, MissingAnswerIsAProblem) {
  auto p = ParseQa("CONTEXT: c\nQUESTION: q?", false);
  EXPECT_FALSE(p.draft);
  EXPECT_FALSE(p.problem.empty());
}

TEST(Records, ValidationCatchesOptionMismatch) {
  auto r = testing::FakeRecord(TaskType::kMultiChoice, "PMC1", "F1");
  r.correct_option = "B";
  bool found = false;
  for (const auto& v : ValidateRecord(r)) found = found || v.find("correct_option") != std::string::npos;
  EXPECT_TRUE(found);
  auto t = testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F1");
  t.options = std::vector<std::string>{"a", "b", "c", "d"};
  EXPECT_FALSE(ValidateRecord(t).empty());
}

TEST(Records, JsonRoundTrip) {
  auto r = testing::FakeRecord(TaskType::kMultiChoice, "PMC1", "F1");
  r.provenance.leakage = LeakageReport{};
  EXPECT_EQ(ToJsonLine(RecordFromJson(ToJson(r))), ToJsonLine(r));
  auto j = ToJson(testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F1"));
  EXPECT_TRUE(j["options"].is_null());
  EXPECT_TRUE(j["correct_option"].is_null());
}

TEST(Stage5, ExemptTypesPassThrough) {
  gateway::GatewayOptions o;
  o.force_mock = true;
  gateway::ModelGateway gw(o);
  for (auto t : {TaskType::kMultiImageSpatial, TaskType::kMultiChoice}) {
    auto r = testing::FakeRecord(t, "PMC1", "F1");
    r.context = r.answer + " " + r.answer;
    const auto before = ToJsonLine(r);
    Stage5Refine(r, gw, testing::MockEndpoint("s5"), {});
    EXPECT_EQ(ToJsonLine(r), before);
  }
}

TEST(Stage5, RemovesLeakFromNonExempt) {
  gateway::GatewayOptions o;
  o.force_mock = true;
  gateway::ModelGateway gw(o);
  auto r = testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F1");
  r.context = "Background sentence here. " + r.answer;
  auto report = Stage5Refine(r, gw, testing::MockEndpoint("s5"), {});
  EXPECT_FALSE(report.initial_ngrams.empty());
  EXPECT_TRUE(report.overlapping_ngrams.empty());
  EXPECT_TRUE(SharedNgrams(r.context, r.answer, 4).empty());
  EXPECT_TRUE(r.provenance.refined);
  EXPECT_TRUE(r.provenance.prompt_digests.count("5:1"));
}

TEST(Stage5, CleanRewriteAvoidsRedaction) {
  gateway::GatewayOptions o;
  o.force_mock = true;
  o.mock.fixtures["stage5"] = "CONTEXT: The panels show a single axial slice.";
  gateway::ModelGateway gw(o);
  auto r = testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F1");
  r.context = "Background sentence here. " + r.answer;
  const auto question = r.question;
  const auto answer = r.answer;
  auto report = Stage5Refine(r, gw, testing::MockEndpoint("s5"), {});
  EXPECT_EQ(report.iterations_used, 1);
  EXPECT_FALSE(report.hard_redacted);
  EXPECT_EQ(r.context, "The panels show a single axial slice.");
  EXPECT_EQ(r.question, question);
  EXPECT_EQ(r.answer, answer);
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::WriteCorpus(dir_ / "corpus", testing::CleanCorpus(3, 9));
    figures_ = corpus::IngestCorpus(dir_ / "corpus", {}).figures;
    ASSERT_EQ(figures_.size(), 3u);
  }
  testing::TempDir dir_;
  std::vector<corpus::GatedFigure> figures_;
};

TEST_F(PipelineTest, EmitsValidRecordsOfEveryType) {
  gateway::GatewayOptions o;
  o.force_mock = true;
  gateway::ModelGateway gw(o);
  PipelineOptions po;
  po.output_dir = dir_ / "out";
  auto report = RunPipeline(figures_, testing::MockForgeConfig(), gw, po);
  EXPECT_EQ(report.records_total, 18u);
  EXPECT_EQ(report.schema_violations, 0u);
  auto check = ValidateDatasetFile(dir_ / "out" / kDatasetFile);
  EXPECT_TRUE(check.violations.empty());
  const std::regex question(
      "What is the spatial relationship between the sub-image showing (.+) and the sub-image showing (.+)\\?");
  for (const auto& r : ReadDataset(dir_ / "out" / kDatasetFile)) {
    for (const auto& img : r.images) EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / img)) << img;
    if (r.task_type == TaskType::kMultiImageSpatial) {
      std::smatch m;
      ASSERT_TRUE(std::regex_match(r.question, m, question)) << r.question;
      EXPECT_EQ(r.answer.rfind(m[1].str() + " is ", 0), 0u) << r.answer;
      EXPECT_EQ(r.images.size(), 2u);
      EXPECT_EQ(r.provenance.stage_model_ids.at("4"), "template");
    }
    if (r.task_type == TaskType::kMultiChoice) {
      ASSERT_TRUE(r.options && r.correct_option);
      EXPECT_EQ((*r.options)[static_cast<std::size_t>((*r.correct_option)[0] - 'A')], r.answer);
    }
  }
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / kRunReportFile));
}

TEST_F(PipelineTest, UnparseableStage4FailsOnlyTheFigure) {
  gateway::GatewayOptions o;
  o.force_mock = true;
  o.mock.fixtures["stage4_text_only"] = "no tags at all";
  gateway::ModelGateway gw(o);
  PipelineOptions po;
  po.output_dir = dir_ / "out";
  auto report = RunPipeline(figures_, testing::MockForgeConfig(), gw, po);
  EXPECT_EQ(report.figure_failures.size(), 3u);
  EXPECT_EQ(report.figure_failures[0]["error"], "UnparseableReply");
  EXPECT_EQ(report.records_total, 0u);
}

TEST_F(PipelineTest, CheckpointDirectoryIsSeparate) {
  gateway::GatewayOptions o;
  o.force_mock = true;
  gateway::ModelGateway gw(o);
  PipelineOptions po;
  po.output_dir = dir_ / "out";
  po.checkpoint_dir = dir_ / "ckpt";
  po.stop_after = 1;
  auto first = RunPipeline(figures_, testing::MockForgeConfig(), gw, po);
  EXPECT_TRUE(first.stopped_early);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ckpt" / kCheckpointFile));
  EXPECT_FALSE(std::filesystem::exists(dir_ / "out" / kCheckpointFile));
  po.stop_after.reset();
  auto second = RunPipeline(figures_, testing::MockForgeConfig(), gw, po);
  EXPECT_TRUE(second.resumed);
  EXPECT_EQ(second.figures_completed, 3u);
}

TEST_F(PipelineTest, PlanCountsCalls) {
  auto plan = PlanCalls(figures_, testing::MockForgeConfig());
  std::size_t panels = 0;
  for (const auto& f : figures_) panels += f.record.panels.size();
  EXPECT_EQ(plan["figures"], 3);
  EXPECT_EQ(plan["calls"]["stage1"], 3);
  EXPECT_EQ(plan["calls"]["stage3"], panels);
  EXPECT_EQ(plan["calls"]["stage4"], 15);
  EXPECT_EQ(plan["records_total"], 18);
}

}  // namespace
}  // namespace medforge::forge
