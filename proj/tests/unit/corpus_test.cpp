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

#include "medforge/common/error.hpp"
#include "medforge/common/text.hpp"
#include "medforge/corpus/article.hpp"
#include "medforge/corpus/ingest.hpp"
#include "synth_corpus.hpp"

namespace medforge {
namespace {

using testing::SynthArticle;
using testing::SynthFigure;
using testing::TempDir;

TEST(SynthCorpus, CaptionHasRequestedWordCount) {
  SynthFigure f;
  f.caption_words = 51;
  f.panels = 3;
  EXPECT_EQ(text::WordCount(testing::SynthCaption(f)), 51u);
}

TEST(ParseArticle, ReadsGeneratedJats) {
  TempDir dir;
  SynthArticle a;
  a.figures.push_back(SynthFigure{});
  testing::WriteArticle(dir.path(), a);
  auto pkg = corpus::ParseArticle(dir.path() / a.article_id);
  EXPECT_EQ(pkg.article_id, "PMC000001");
  EXPECT_EQ(pkg.license, "CC BY");
  ASSERT_EQ(pkg.figures.size(), 1u);
  EXPECT_EQ(pkg.figures[0].sub_captions.size(), 4u);
  EXPECT_EQ(pkg.figures[0].graphic_path, "figures/F1.png");
  EXPECT_FALSE(corpus::ExtractInlineText(pkg, "F1").empty());
}

TEST(ParseArticle, MissingManifest) {
  TempDir dir;
  std::filesystem::create_directories(dir / "empty");
  try {
    corpus::ParseArticle(dir / "empty");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kMissingManifest);
  }
}

TEST(Ingest, CleanCorpusPassesAndSegments) {
  TempDir dir;
  testing::WriteCorpus(dir.path(), testing::CleanCorpus(6));
  corpus::IngestOptions opts;
  auto r = corpus::IngestCorpus(dir.path(), opts);
  EXPECT_EQ(r.articles_seen, 6u);
  ASSERT_EQ(r.figures.size(), 6u) << r.ReportJson().dump(2);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(r.figures[static_cast<std::size_t>(i)].record.panels.size(), static_cast<std::size_t>(2 + i % 4));
  }
  EXPECT_TRUE(r.rejections.empty());
}

TEST(Ingest, RejectsByRule) {
  TempDir dir;
  std::vector<SynthArticle> as(4);
  for (int i = 0; i < 4; ++i) {
    as[i].article_id = "PMC10" + std::to_string(i);
    as[i].figures.push_back(SynthFigure{});
  }
  as[0].license = "All rights reserved";
  as[1].figures[0].caption_words = 50;
  as[1].figures[0].panels = 2;
  as[2].figures[0].short_sub_caption = 9;
  as[3].figures[0].panels = 10;
  as[3].figures[0].cols = 5;
  as[3].figures[0].non_medical_panels = 1;
  as[3].figures[0].caption_words = 150;
  testing::WriteCorpus(dir.path(), as);
  testing::RedPanelClassifier cls;
  corpus::IngestOptions opts;
  opts.classifier = &cls;
  auto r = corpus::IngestCorpus(dir.path(), opts);
  EXPECT_TRUE(r.figures.empty());
  auto counts = r.RejectionCounts();
  EXPECT_EQ(counts["license"], 1u);
  EXPECT_EQ(counts["compound_caption_length"], 1u);
  EXPECT_EQ(counts["sub_caption_length"], 1u);
  EXPECT_EQ(counts["medical_ratio"], 1u);
}

}  // namespace
}  // namespace medforge
