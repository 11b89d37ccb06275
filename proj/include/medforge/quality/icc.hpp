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

#include <string_view>
#include <vector>

namespace medforge::quality {

// rows = subjects, columns = raters.
using ScoreMatrix = std::vector<std::vector<double>>;

enum class IccModel {
  kTwoWayRandomAbsolute,  // ICC(2,1), default
  kTwoWayMixedConsistency,  // ICC(3,1)
  kOneWayRandom,  // ICC(1,1)
};
std::string_view IccModelName(IccModel m);
IccModel IccModelFromName(std::string_view name);  // "icc2_1", "icc3_1", "icc1_1"

struct MeanSquares {
  double rows = 0;     // MS_R, between subjects
  double columns = 0;  // MS_C, between raters
  double error = 0;    // MS_E, residual
  double within = 0;   // MS_W, within subjects (one-way)
};
MeanSquares TwoWayAnova(const ScoreMatrix& m);

struct IccResult {
  double value = 0;
  bool zero_variance = false;  // every cell equal; value is 1 by convention
};

// Throws DegenerateMatrix for n < 2, k < 2 or ragged rows.
IccResult ComputeIcc(const ScoreMatrix& m, IccModel model = IccModel::kTwoWayRandomAbsolute);

}  // namespace medforge::quality
