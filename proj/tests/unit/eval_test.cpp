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

#include <cmath>

#include "fixtures.hpp"
#include "medforge/common/error.hpp"
#include "medforge/eval/embedding_metrics.hpp"
#include "medforge/eval/judge.hpp"
#include "medforge/eval/multichoice.hpp"
#include "medforge/eval/report.hpp"
#include "medforge/eval/text_metrics.hpp"

namespace medforge::eval {
namespace {

TEST(Bleu, EdgeCases) {
  EXPECT_EQ(Bleu4({"", "a b c d"}), 0.0);
  EXPECT_EQ(Bleu4({"a b c d e", "a b c d e"}), 1.0);
  // No 4-gram match: add-one smoothing keeps the score positive.
  EXPECT_GT(Bleu4({"a b c x d", "a b c d"}), 0.0);
  // Brevity penalty.
  EXPECT_LT(Bleu4({"a b c d", "a b c d e f g h"}), 1.0);
}

TEST(Bleu, PunctuationAndCaseIgnored) {
  EXPECT_EQ(Bleu4({"The lesion, enhancing; left lobe.", "the LESION enhancing left lobe"}), 1.0);
}

TEST(RougeL, HandCase) {
  auto r = RougeLScore({"the cat on the mat", "the cat sat on the mat"});
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 5.0 / 6.0);
  EXPECT_NEAR(r.f, 10.0 / 11.0, 1e-15);
  EXPECT_EQ(RougeLScore({"alpha beta", "gamma delta"}).f, 0.0);
  EXPECT_EQ(RougeLScore({"", "x"}).f, 0.0);
}

TEST(Batch, ParallelMatchesSerial) {
  std::vector<TextPair> pairs;
  for (int i = 0; i < 300; ++i) {
    pairs.push_back({"lesion " + std::to_string(i % 7) + " in the left lobe with edema " + std::to_string(i % 3),
                     "lesion in the left lobe " + std::to_string(i % 5) + " with marked edema"});
  }
  EXPECT_EQ(BatchBleu4(pairs), BatchBleu4Serial(pairs));
  auto a = BatchRougeL(pairs), b = BatchRougeLSerial(pairs);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].f, b[i].f);
}

TEST(BertScore, ToyMatrix) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<double>> cand = {{1, 0}, {0, 1}, {s, s}};
  std::vector<std::vector<double>> ref = {{1, 0}, {0.6, 0.8}};
  auto b = BertScoreFromVectors(cand, ref);
  const double p = (1.0 + 0.8 + 1.4 * s) / 3.0;
  const double r = (1.0 + 1.4 * s) / 2.0;
  EXPECT_NEAR(b.precision, p, 1e-12);
  EXPECT_NEAR(b.recall, r, 1e-12);
  EXPECT_NEAR(b.f1, 2 * p * r / (p + r), 1e-12);
}

TEST(BertScore, SingleTokenIsClampedCosine) {
  auto b = BertScoreFromVectors({{1, 0}}, {{-1, 0}});
  EXPECT_EQ(b.f1, 0.0);
  auto c = BertScoreFromVectors({{1, 0}}, {{0.6, 0.8}});
  EXPECT_NEAR(c.f1, 0.6, 1e-12);
}

TEST(BertScore, IdentityUnderMock) {
  gateway::ModelGateway gw;
  auto ep = testing::MockEndpoint("emb");
  auto b = BertScoreOf({"axial lesion enhancement", "axial lesion enhancement"}, gw, ep);
  EXPECT_NEAR(b.f1, 1.0, 1e-12);
  EXPECT_NEAR(Sts({"same text", "same text"}, gw, ep), 100.0, 1e-9);
}

TEST(MultiChoice, ExtractLetter) {
  const std::vector<std::string> opts = {"edema", "fibrosis", "necrosis", "calcification"};
  EXPECT_EQ(ExtractLetter("C", opts), 'C');
  EXPECT_EQ(ExtractLetter("(B) fibrosis", opts), 'B');
  EXPECT_EQ(ExtractLetter("The answer is D", opts), 'D');
  EXPECT_EQ(ExtractLetter("necrosis", opts), 'C');
  EXPECT_FALSE(ExtractLetter("E", opts).has_value());
  EXPECT_FALSE(ExtractLetter("I am not sure", opts).has_value());
}

TEST(MultiChoice, MacroScores) {
  std::vector<MultiChoiceItem> items = {{'A', 'A', 4}, {'B', 'A', 4}, {'B', 'B', 4}, {std::nullopt, 'B', 4}};
  auto s = ScoreMultiChoice(items);
  EXPECT_DOUBLE_EQ(s.accuracy, 50.0);
  EXPECT_DOUBLE_EQ(s.macro_precision, 75.0);
  EXPECT_DOUBLE_EQ(s.macro_recall, 50.0);
  EXPECT_NEAR(s.macro_f1, 100.0 * (2.0 / 3.0 + 0.5) / 2.0, 1e-12);
  EXPECT_EQ(s.invalid, 1u);
  EXPECT_THROW(ScoreMultiChoice({}), Error);
}

TEST(Judge, ParsesFencedReply) {
  auto p = ParseJudgeReply("MOCK-REPLY abc\n```json\n{\"winner\": \"B\", \"rationale\": \"closer\"}\n```");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->first, "B");
  EXPECT_FALSE(ParseJudgeReply("{\"winner\": \"C\"}"));
}

TEST(Judge, UnparseableBecomesTie) {
  gateway::GatewayOptions o;
  o.mock.fixtures["judge"] = "no verdict";
  gateway::ModelGateway gw(o);
  auto v = JudgePairwise("ref", "a", "b", gw, testing::MockEndpoint("j"), 1);
  EXPECT_EQ(v.outcome, Outcome::kTie);
  EXPECT_EQ(v.rationale, "unparseable");
}

TEST(Report, IdentityPredictionsScoreMaximal) {
  std::vector<forge::InstructionRecord> records;
  std::map<std::string, std::string> preds;
  for (auto t : forge::kAllTaskTypes) {
    auto r = testing::FakeRecord(t, "PMC9", "F1");
    records.push_back(r);
    preds[r.record_id] = r.answer;
  }
  gateway::ModelGateway gw;
  auto ep = testing::MockEndpoint("emb");
  auto report = EvaluatePredictions(records, preds, &gw, {&ep, &ep});
  for (const auto& [type, row] : report["open_ended"].items()) {
    EXPECT_NEAR(row["BLEU@4"].get<double>(), 100.0, 1e-9) << type;
    EXPECT_NEAR(row["ROUGE-L"].get<double>(), 100.0, 1e-9) << type;
    EXPECT_NEAR(row["BERTScore"].get<double>(), 100.0, 1e-9) << type;
    EXPECT_NEAR(row["STS"].get<double>(), 100.0, 1e-9) << type;
  }
  EXPECT_EQ(report["open_ended"].size(), 5u);
  EXPECT_NEAR(report["multi_choice"]["Accuracy"].get<double>(), 100.0, 1e-12);
}

}  // namespace
}  // namespace medforge::eval
