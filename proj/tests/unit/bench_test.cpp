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

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "medforge/bench/curation.hpp"
#include "medforge/bench/export.hpp"
#include "medforge/bench/review_service.hpp"
#include "medforge/bench/sampler.hpp"
#include "medforge/common/error.hpp"
#include "synth_corpus.hpp"

namespace medforge::bench {
namespace {

using forge::TaskType;
using nlohmann::json;

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIoError;
}

CurationStore::TimeSource FixedTime() {
  return [] { return std::string("2026-01-01T00:00:00Z"); };
}

VerdictRequest Vote(const std::string& rater, Decision d, int revision = 0) {
  VerdictRequest r;
  r.rater_id = rater;
  r.decision = d;
  r.revision = revision;
  return r;
}

Verdict Cast(const std::string& rater, Decision d, bool adjudicator = false) {
  Verdict v;
  v.rater_id = rater;
  v.decision = d;
  v.adjudicator = adjudicator;
  return v;
}

TEST(StateFor, Transitions) {
  std::vector<Verdict> v;
  EXPECT_EQ(StateFor(v), ItemState::kPending);
  v.push_back(Cast("a", Decision::kAccept));
  EXPECT_EQ(StateFor(v), ItemState::kInReview);
  v.push_back(Cast("b", Decision::kAccept));
  EXPECT_EQ(StateFor(v), ItemState::kAccepted);
  v[1].decision = Decision::kReject;
  EXPECT_EQ(StateFor(v), ItemState::kConflict);
  v.push_back(Cast("c", Decision::kReject, true));
  EXPECT_EQ(StateFor(v), ItemState::kRejected);
}

TEST(CurationStore, VerdictFlowAndErrors) {
  CurationStore store({}, FixedTime());
  auto ids = store.AddItems({testing::FakeRecord(TaskType::kSingleImage, "PMC1", "F1")});
  ASSERT_EQ(ids, std::vector<std::string>{"item-0001"});
  const auto id = ids[0];

  EXPECT_EQ(store.SubmitVerdict(id, Vote("r1", Decision::kAccept)), ItemState::kInReview);
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, Vote("r1", Decision::kAccept)); }), Errc::kDuplicateVerdict);
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, Vote("r2", Decision::kAccept, 3)); }), Errc::kStaleRevision);
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, Vote("", Decision::kAccept)); }), Errc::kInvalidArgument);
  auto bad = Vote("r2", Decision::kAccept);
  bad.scores = Scores{2, 5, 5};
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, bad); }), Errc::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict("item-9999", Vote("r2", Decision::kAccept)); }), Errc::kUnknownItem);

  EXPECT_EQ(store.SubmitVerdict(id, Vote("r2", Decision::kAccept)), ItemState::kAccepted);
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, Vote("r3", Decision::kAccept)); }), Errc::kTerminalState);
  EXPECT_TRUE(store.Get(id)->accepted_seq.has_value());
}

TEST(CurationStore, ConflictNeedsAdjudicatorOrRevise) {
  CurationStore store({}, FixedTime());
  auto ids = store.AddItems({testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F1"),
                             testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F2")});
  for (const auto& id : ids) {
    store.SubmitVerdict(id, Vote("r1", Decision::kAccept));
    EXPECT_EQ(store.SubmitVerdict(id, Vote("r2", Decision::kReject)), ItemState::kConflict);
    EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, Vote("r3", Decision::kAccept)); }), Errc::kTerminalState);
  }
  auto adj = Vote("lead", Decision::kAccept);
  adj.adjudicator = true;
  EXPECT_EQ(store.SubmitVerdict(ids[0], adj), ItemState::kAccepted);

  ReviseRequest rev;
  rev.revision = 0;
  rev.rater_id = "r2";
  rev.answer = "A corrected answer.";
  auto item = store.Revise(ids[1], rev);
  EXPECT_EQ(item.revision, 1);
  EXPECT_EQ(item.state, ItemState::kPending);
  EXPECT_TRUE(item.verdicts.empty());
  EXPECT_EQ(item.history.size(), 2u);
  EXPECT_EQ(item.record.answer, "A corrected answer.");
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(ids[1], Vote("r1", Decision::kAccept, 0)); }), Errc::kStaleRevision);
  EXPECT_EQ(store.SubmitVerdict(ids[1], Vote("r1", Decision::kAccept, 1)), ItemState::kInReview);
}

TEST(CurationStore, AdjudicatorOnlyOnConflict) {
  CurationStore store({}, FixedTime());
  auto id = store.AddItems({testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F1")})[0];
  auto adj = Vote("lead", Decision::kAccept);
  adj.adjudicator = true;
  EXPECT_EQ(CodeOf([&] { store.SubmitVerdict(id, adj); }), Errc::kInvalidArgument);
}

TEST(CurationStore, LogReplayRestoresState) {
  testing::TempDir dir;
  const auto log = dir.path() / "log.jsonl";
  std::vector<std::string> ids;
  {
    CurationStore store(log, FixedTime());
    ids = store.AddItems(testing::BalancedRecords(2));
    store.SubmitVerdict(ids[0], Vote("r1", Decision::kAccept));
    store.SubmitVerdict(ids[0], Vote("r2", Decision::kAccept));
    store.SubmitVerdict(ids[1], Vote("r1", Decision::kReject));
  }
  CurationStore again(log, FixedTime());
  EXPECT_EQ(again.Items().size(), ids.size());
  EXPECT_EQ(again.Get(ids[0])->state, ItemState::kAccepted);
  EXPECT_EQ(again.Get(ids[1])->state, ItemState::kInReview);
  EXPECT_EQ(ToJson(*again.Get(ids[0])), ToJson(*CurationStore(log, FixedTime()).Get(ids[0])));
  EXPECT_EQ(again.AddItems({testing::FakeRecord(TaskType::kTextOnly, "PMC7", "F7")})[0], "item-0013");
}

TEST(CurationStore, QueueSkipsVotedAndTerminal) {
  CurationStore store({}, FixedTime());
  auto ids = store.AddItems(testing::BalancedRecords(1));
  store.SubmitVerdict(ids[0], Vote("r1", Decision::kAccept));
  store.SubmitVerdict(ids[1], Vote("r2", Decision::kAccept));
  store.SubmitVerdict(ids[1], Vote("r3", Decision::kAccept));
  EXPECT_EQ(store.Queue("r1").size(), ids.size() - 2);
  EXPECT_EQ(store.Queue("r9").size(), ids.size() - 1);
  EXPECT_EQ(store.StateCounts().at("accepted"), 1u);
}

TEST(CurationAgreement, FirstTwoDecisions) {
  CurationStore store({}, FixedTime());
  auto ids = store.AddItems(testing::BalancedRecords(1));
  EXPECT_EQ(CodeOf([&] { CurationAgreement(store.Items()); }), Errc::kNoDualVerdicts);
  store.SubmitVerdict(ids[0], Vote("r1", Decision::kAccept));
  store.SubmitVerdict(ids[0], Vote("r2", Decision::kAccept));
  store.SubmitVerdict(ids[1], Vote("r1", Decision::kAccept));
  store.SubmitVerdict(ids[1], Vote("r2", Decision::kReject));
  EXPECT_DOUBLE_EQ(CurationAgreement(store.Items()), 50.0);
}

TEST(Sampler, OneRecordPerFigureAndDeterministic) {
  std::vector<forge::InstructionRecord> records;
  for (int f = 0; f < 20; ++f) {
    for (int n = 0; n < 3; ++n) {
      records.push_back(testing::FakeRecord(TaskType::kTextOnly, "PMC1", "F" + std::to_string(f), n));
    }
  }
  BenchmarkSpec spec;
  spec.categories = {TaskType::kTextOnly};
  spec.quota = 10;
  spec.seed = 3;
  EXPECT_EQ(spec.PoolSize(), 15);
  auto a = SampleCandidates(records, spec);
  ASSERT_EQ(a.size(), 15u);
  std::set<std::string> figures;
  for (const auto& r : a) figures.insert(r.provenance.figure_id);
  EXPECT_EQ(figures.size(), 15u);
  auto b = SampleCandidates(records, spec);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].record_id, b[i].record_id);
  spec.quota = 25;
  try {
    SampleCandidates(records, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInsufficientRecords);
    EXPECT_EQ(e.detail()["deficits"]["text_only"]["available"], 20);
  }
}

TEST(Export, QuotaUnmetListsDeficits) {
  testing::TempDir dir;
  CurationStore store({}, FixedTime());
  auto ids = store.AddItems(testing::BalancedRecords(3));
  for (const auto& id : ids) {
    store.SubmitVerdict(id, Vote("r1", Decision::kAccept));
    store.SubmitVerdict(id, Vote("r2", Decision::kAccept));
  }
  BenchmarkSpec spec;
  spec.quota = 3;
  auto res = ExportBenchmark(store.Items(), spec, dir.path(), "abc");
  EXPECT_EQ(res.total, 18u);
  EXPECT_EQ(res.manifest_json["source_dataset_sha256"], "abc");
  EXPECT_EQ(forge::ReadDataset(res.dataset).size(), 18u);
  spec.quota = 4;
  try {
    ExportBenchmark(store.Items(), spec, dir.path() / "x", "abc");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kQuotaUnmet);
    EXPECT_EQ(e.detail()["deficits"].size(), 6u);
    EXPECT_EQ(e.detail()["deficits"]["single_image"]["missing"], 1);
  }
}

class ReviewApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::filesystem::create_directories(dir.path() / "images");
    std::ofstream(dir.path() / "images" / "p.png") << "PNGDATA";
    std::ofstream(dir.path() / "figures.jsonl")
        << json{{"article_id", "PMC1"},
                {"figure_id", "F1"},
                {"image", "images/p.png"},
                {"panel_images", {{"A", "images/p.png"}}},
                {"figure",
                 {{"image_width", 8},
                  {"image_height", 8},
                  {"caption", "c"},
                  {"panels", {{{"panel_id", "A"}}}}}}}
               .dump()
        << "\n";
    ids = store.AddItems({testing::FakeRecord(TaskType::kSingleImage, "PMC1", "F1")});
    for (const auto& id : store.AddItems(testing::BalancedRecords(1))) ids.push_back(id);
    api = std::make_unique<ReviewApi>(store, ReviewOptions{dir.path(), {}});
  }

  ApiResponse Call(const std::string& method, const std::string& path, json body = nullptr,
                   std::map<std::string, std::string> query = {}) {
    return api->Handle({method, path, std::move(query), body.is_null() ? "" : body.dump()});
  }

  testing::TempDir dir;
  CurationStore store{{}, FixedTime()};
  std::vector<std::string> ids;
  std::unique_ptr<ReviewApi> api;
};

TEST_F(ReviewApiTest, RoutesAndStatuses) {
  EXPECT_EQ(Call("GET", "/api/queue").status, 400);
  auto q = Call("GET", "/api/queue", nullptr, {{"rater_id", "r1"}});
  EXPECT_EQ(q.status, 200);
  EXPECT_EQ(json::parse(q.body).size(), ids.size());

  auto view = Call("GET", "/api/items/" + ids[0]);
  EXPECT_EQ(view.status, 200);
  EXPECT_EQ(json::parse(view.body)["figure"]["panels"][0]["image_url"], "/api/figures/PMC1/F1?panel=A");
  EXPECT_EQ(Call("GET", "/api/items/item-9999").status, 404);

  const json vote = {{"rater_id", "r1"}, {"decision", "accept"}, {"revision", 0}};
  EXPECT_EQ(Call("POST", "/api/items/" + ids[0] + "/verdict", vote).status, 200);
  auto dup = Call("POST", "/api/items/" + ids[0] + "/verdict", vote);
  EXPECT_EQ(dup.status, 409);
  EXPECT_EQ(json::parse(dup.body)["error"], "DuplicateVerdict");
  EXPECT_EQ(Call("POST", "/api/items/" + ids[0] + "/verdict", {{"rater_id", "r2"}, {"revision", 5}, {"decision", "accept"}})
                .status,
            409);
  EXPECT_EQ(Call("POST", "/api/items/" + ids[0] + "/verdict", {{"rater_id", "r2"}, {"decision", "maybe"}}).status, 400);
  EXPECT_EQ(api->Handle({"POST", "/api/items/" + ids[0] + "/verdict", {}, "{not json"}).status, 400);

  EXPECT_EQ(Call("POST", "/api/items/" + ids[1] + "/revise", {{"revision", 0}, {"answer", "new"}}).status, 200);
  EXPECT_EQ(store.Get(ids[1])->revision, 1);

  auto stats = json::parse(Call("GET", "/api/stats").body);
  EXPECT_EQ(stats["items"], ids.size());

  EXPECT_EQ(Call("GET", "/api/figures/PMC1/F1").status, 200);
  EXPECT_EQ(Call("GET", "/api/figures/PMC1/F1", nullptr, {{"panel", "A"}}).body, "PNGDATA");
  EXPECT_EQ(Call("GET", "/api/figures/PMC1/F1", nullptr, {{"panel", "Z"}}).status, 404);
  EXPECT_EQ(Call("GET", "/api/figures/PMC1/F9").status, 404);
  auto file = Call("GET", "/api/files/images/p.png");
  EXPECT_EQ(file.status, 200);
  EXPECT_EQ(file.body, "PNGDATA");
  EXPECT_EQ(Call("GET", "/api/files/../figures.jsonl").status, 404);
  EXPECT_EQ(Call("GET", "/api/nothing").status, 404);
}

TEST_F(ReviewApiTest, LiveServerRoundTrip) {
  ReviewServer server(*api);
  const int port = server.Bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread t([&] { server.Listen(); });
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/queue?rater_id=r1");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body).size(), ids.size());
  auto post = client.Post("/api/items/" + ids[0] + "/verdict",
                          json{{"rater_id", "r1"}, {"decision", "reject"}, {"revision", 0}}.dump(),
                          "application/json");
  ASSERT_TRUE(post);
  EXPECT_EQ(post->status, 200);
  EXPECT_EQ(store.Get(ids[0])->state, ItemState::kInReview);
  server.Stop();
  t.join();
}

}  // namespace
}  // namespace medforge::bench
