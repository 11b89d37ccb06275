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
#include "medforge/quality/icc.hpp"
#include "medforge/quality/ratings.hpp"

namespace medforge::quality {
namespace {

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIoError;
}

TEST(RatingsCsv, ParsesBomAndQuotes) {
  auto r = ParseRatingsCsv(std::string("\xEF\xBB\xBF") + kRatingsHeader + "\n\"s,1\",2,\"dr a\",5,3,1\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].sample_id, "s,1");
  EXPECT_EQ(r[0].rater_id, "dr a");
  EXPECT_EQ(r[0].completeness, 3);
  EXPECT_EQ(ParseRatingsCsv(ToCsv(r))[0].sample_id, "s,1");
}

TEST(RatingsCsv, Errors) {
  EXPECT_EQ(CodeOf([] { ParseRatingsCsv("a,b\n"); }), Errc::kMalformedSource);
  EXPECT_EQ(CodeOf([] { ParseRatingsCsv(std::string(kRatingsHeader) + "\ns1,1,r1,4,5,5\n"); }), Errc::kIllegalScore);
  EXPECT_EQ(CodeOf([] { ParseRatingsCsv(std::string(kRatingsHeader) + "\ns1,1,r1,5,5\n"); }), Errc::kMalformedSource);
}

TEST(Agreement, ExactAndWithinOne) {
  auto a = ComputeAgreementRates({{1, 1}, {1, 3}, {1, 5}, {5, 5}});
  EXPECT_DOUBLE_EQ(a.exact_pct, 50.0);
  EXPECT_DOUBLE_EQ(a.within_one_pct, 75.0);
  EXPECT_EQ(CodeOf([] { ComputeAgreementRates({}); }), Errc::kEmptyInput);
}

TEST(Icc, DegenerateShapes) {
  EXPECT_EQ(CodeOf([] { ComputeIcc({{1, 2, 3}}); }), Errc::kDegenerateMatrix);
  EXPECT_EQ(CodeOf([] { ComputeIcc({{1}, {2}}); }), Errc::kDegenerateMatrix);
  EXPECT_EQ(CodeOf([] { ComputeIcc({{1, 2}, {2}}); }), Errc::kDegenerateMatrix);
  auto same = ComputeIcc({{3, 3}, {3, 3}});
  EXPECT_EQ(same.value, 1.0);
  EXPECT_TRUE(same.zero_variance);
}

TEST(Icc, PerfectRankAgreement) {
  EXPECT_NEAR(ComputeIcc({{1, 1, 1}, {3, 3, 3}, {5, 5, 5}}).value, 1.0, 1e-12);
}

TEST(StageSummary, FormatsMeanAndSd) {
  std::vector<RatingRecord> r;
  const int scores[] = {5, 5, 5, 3, 5};
  for (int i = 0; i < 5; ++i) r.push_back({"s" + std::to_string(i), 2, "r1", scores[i], 5, 5});
  auto s = ComputeStageSummary(r);
  EXPECT_EQ(s[2]["correctness"].Formatted(), "4.6 ± 0.9");
  EXPECT_EQ(s[2]["completeness"].Formatted(), "5.0 ± 0.0");
  EXPECT_EQ(s[2]["average"].n, 15u);
}

TEST(Report, DropsIncompleteSubjects) {
  std::vector<RatingRecord> r;
  for (int i = 0; i < 4; ++i) {
    for (const char* rater : {"r1", "r2", "r3"}) {
      const int v = i % 2 ? 5 : 3;
      r.push_back({"s" + std::to_string(i), 1, rater, v, v, rater[1] == '3' ? 1 : v});
    }
  }
  r.push_back({"s9", 1, "r1", 5, 5, 5});
  auto rep = ComputeAgreementReport(r);
  EXPECT_EQ(rep.subjects_used, 4u);
  EXPECT_EQ(rep.subjects_dropped, 1u);
  EXPECT_EQ(rep.raters, 3u);
  EXPECT_NEAR(rep.icc_correctness, 1.0, 1e-12);
  EXPECT_LT(rep.icc_clarity, rep.icc_correctness);
  EXPECT_EQ(rep.icc_model, "icc2_1");
}

TEST(Report, RejectsDuplicates) {
  std::vector<RatingRecord> r = {{"s1", 1, "r1", 5, 5, 5}, {"s1", 1, "r1", 3, 3, 3}};
  EXPECT_EQ(CodeOf([&] { ComputeAgreementReport(r); }), Errc::kInvalidArgument);
}

}  // namespace
}  // namespace medforge::quality
