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

#include "medforge/quality/icc.hpp"

#include <string>

#include "medforge/common/error.hpp"

namespace medforge::quality {

std::string_view IccModelName(IccModel m) {
  switch (m) {
    case IccModel::kTwoWayRandomAbsolute: return "icc2_1";
    case IccModel::kTwoWayMixedConsistency: return "icc3_1";
    case IccModel::kOneWayRandom: return "icc1_1";
  }
  return "icc2_1";
}

IccModel IccModelFromName(std::string_view name) {
  for (auto m : {IccModel::kTwoWayRandomAbsolute, IccModel::kTwoWayMixedConsistency, IccModel::kOneWayRandom}) {
    if (IccModelName(m) == name) return m;
  }
  throw Error(Errc::kInvalidConfig, "unknown ICC model '" + std::string(name) + "'");
}

namespace {

void CheckShape(const ScoreMatrix& m) {
  if (m.size() < 2) throw Error(Errc::kDegenerateMatrix, "ICC needs at least 2 subjects, got " + std::to_string(m.size()));
  const std::size_t k = m.front().size();
  if (k < 2) throw Error(Errc::kDegenerateMatrix, "ICC needs at least 2 raters, got " + std::to_string(k));
  for (const auto& row : m) {
    if (row.size() != k) throw Error(Errc::kDegenerateMatrix, "ragged score matrix");
  }
}

}  // namespace

MeanSquares TwoWayAnova(const ScoreMatrix& m) {
  CheckShape(m);
  const std::size_t n = m.size(), k = m.front().size();
  double grand = 0;
  std::vector<double> row_mean(n, 0), col_mean(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row_mean[i] += m[i][j];
      col_mean[j] += m[i][j];
      grand += m[i][j];
    }
  }
  for (auto& v : row_mean) v /= static_cast<double>(k);
  for (auto& v : col_mean) v /= static_cast<double>(n);
  grand /= static_cast<double>(n * k);
  double ss_total = 0, ss_rows = 0, ss_cols = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) ss_total += (m[i][j] - grand) * (m[i][j] - grand);
  }
  for (std::size_t i = 0; i < n; ++i) ss_rows += static_cast<double>(k) * (row_mean[i] - grand) * (row_mean[i] - grand);
  for (std::size_t j = 0; j < k; ++j) ss_cols += static_cast<double>(n) * (col_mean[j] - grand) * (col_mean[j] - grand);
  const double ss_err = ss_total - ss_rows - ss_cols;
  const double dn = static_cast<double>(n), dk = static_cast<double>(k);
  MeanSquares ms;
  ms.rows = ss_rows / (dn - 1);
  ms.columns = ss_cols / (dk - 1);
  ms.error = ss_err / ((dn - 1) * (dk - 1));
  ms.within = (ss_total - ss_rows) / (dn * (dk - 1));
  return ms;
}

IccResult ComputeIcc(const ScoreMatrix& m, IccModel model) {
  CheckShape(m);
  IccResult r;
  bool all_equal = true;
  for (const auto& row : m) {
    for (double v : row) all_equal = all_equal && v == m[0][0];
  }
  if (all_equal) {
    r.value = 1.0;
    r.zero_variance = true;
    return r;
  }
  const auto ms = TwoWayAnova(m);
  const double n = static_cast<double>(m.size()), k = static_cast<double>(m.front().size());
  double num = 0, den = 0;
  switch (model) {
    case IccModel::kTwoWayRandomAbsolute:
      num = ms.rows - ms.error;
      den = ms.rows + (k - 1) * ms.error + k * (ms.columns - ms.error) / n;
      break;
    case IccModel::kTwoWayMixedConsistency:
      num = ms.rows - ms.error;
      den = ms.rows + (k - 1) * ms.error;
      break;
    case IccModel::kOneWayRandom:
      num = ms.rows - ms.within;
      den = ms.rows + (k - 1) * ms.within;
      break;
  }
  r.value = den == 0 ? 0.0 : num / den;
  return r;
}

}  // namespace medforge::quality
