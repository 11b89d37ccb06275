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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/quality/icc.hpp"

namespace medforge::quality {

enum class Dimension { kCorrectness, kCompleteness, kClarity };
inline constexpr Dimension kDimensions[] = {Dimension::kCorrectness, Dimension::kCompleteness, Dimension::kClarity};
std::string_view DimensionName(Dimension d);

struct RatingRecord {
  std::string sample_id;
  int stage = 1;
  std::string rater_id;
  int correctness = 5;
  int completeness = 5;
  int clarity = 5;

  int Score(Dimension d) const;
};

inline constexpr const char* kRatingsHeader = "sample_id,stage,rater_id,correctness,completeness,clarity";

// Throws MalformedSource (with line numbers) or IllegalScore.
std::vector<RatingRecord> ReadRatingsCsv(const std::filesystem::path& path);
std::vector<RatingRecord> ParseRatingsCsv(const std::string& text);
std::string ToCsv(const std::vector<RatingRecord>& ratings);

// Throws IllegalScore unless every score is 1, 3 or 5 and stage is 1..5;
// InvalidArgument on a repeated (sample_id, rater_id).
void ValidateRatings(const std::vector<RatingRecord>& ratings);

// 1 -> 1, 3 -> 2, 5 -> 3; IllegalScore otherwise.
int ScoreRank(int score);

struct AgreementRates {
  double exact_pct = 0;
  double within_one_pct = 0;
  std::size_t pairs = 0;
};
// Throws EmptyInput / IllegalScore.
AgreementRates ComputeAgreementRates(const std::vector<std::pair<int, int>>& pairs);

struct StageCell {
  double mean = 0;
  double sd = 0;  // sample SD; 0 when n == 1
  std::size_t n = 0;
  std::string Formatted() const;  // "4.8 ± 0.2"
};
// stage -> column ("correctness", "completeness", "clarity", "average").
// "average" pools the three dimensions' ratings.
using StageSummary = std::map<int, std::map<std::string, StageCell>>;
StageSummary ComputeStageSummary(const std::vector<RatingRecord>& ratings);

struct AgreementReport {
  double icc_overall = 0;
  double icc_correctness = 0;
  double icc_completeness = 0;
  double icc_clarity = 0;
  double exact_pct = 0;
  double within_one_pct = 0;
  StageSummary per_stage_means;
  std::size_t raters = 0;
  std::size_t subjects_used = 0;
  std::size_t subjects_dropped = 0;  // missing at least one rater
  std::size_t rater_pairs = 0;
  std::vector<std::string> zero_variance;  // ICC entries set to 1 by convention
  std::string icc_model;

  nlohmann::json ToJson() const;
};

// ICC per dimension over the samples x raters matrix; overall ICC stacks
// (sample, dimension) rows. Agreement counts every rater pair on every
// sample and dimension.
AgreementReport ComputeAgreementReport(const std::vector<RatingRecord>& ratings,
                                       IccModel model = IccModel::kTwoWayRandomAbsolute);

}  // namespace medforge::quality
