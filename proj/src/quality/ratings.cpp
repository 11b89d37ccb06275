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

#include "medforge/quality/ratings.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/common/text.hpp"

namespace medforge::quality {

std::string_view DimensionName(Dimension d) {
  switch (d) {
    case Dimension::kCorrectness: return "correctness";
    case Dimension::kCompleteness: return "completeness";
    case Dimension::kClarity: return "clarity";
  }
  return "correctness";
}

int RatingRecord::Score(Dimension d) const {
  switch (d) {
    case Dimension::kCorrectness: return correctness;
    case Dimension::kCompleteness: return completeness;
    case Dimension::kClarity: return clarity;
  }
  return correctness;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(text::Trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw Error(Errc::kMalformedSource, "line " + std::to_string(lineno) + ": unterminated quote");
  out.push_back(text::Trim(cur));
  return out;
}

int ParseInt(const std::string& s, std::size_t lineno, const char* field) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::kMalformedSource, "line " + std::to_string(lineno) + ": " + field + " '" + s + "' is not an integer",
              {{"line", lineno}, {"field", field}});
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string OneDecimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  std::string s = buf;
  return s == "-0.0" ? "0.0" : s;
}

StageCell Cell(const std::vector<int>& xs) {
  StageCell c;
  c.n = xs.size();
  if (xs.empty()) return c;
  double sum = 0;
  for (int x : xs) sum += x;
  c.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (int x : xs) ss += (x - c.mean) * (x - c.mean);
    c.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return c;
}

}  // namespace

std::vector<RatingRecord> ParseRatingsCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<RatingRecord> out;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && text::StartsWith(line, "\xEF\xBB\xBF")) line = line.substr(3);
    if (text::Trim(line).empty()) continue;
    if (!header) {
      std::string compact;
      for (char c : line) {
        if (c != ' ') compact.push_back(c);
      }
      if (compact != kRatingsHeader) {
        throw Error(Errc::kMalformedSource, "line " + std::to_string(lineno) + ": expected header '" +
                                                std::string(kRatingsHeader) + "'");
      }
      header = true;
      continue;
    }
    auto f = SplitCsvLine(line, lineno);
    if (f.size() != 6) {
      throw Error(Errc::kMalformedSource,
                  "line " + std::to_string(lineno) + ": expected 6 fields, got " + std::to_string(f.size()));
    }
    RatingRecord r;
    r.sample_id = f[0];
    r.stage = ParseInt(f[1], lineno, "stage");
    r.rater_id = f[2];
    r.correctness = ParseInt(f[3], lineno, "correctness");
    r.completeness = ParseInt(f[4], lineno, "completeness");
    r.clarity = ParseInt(f[5], lineno, "clarity");
    if (r.sample_id.empty() || r.rater_id.empty()) {
      throw Error(Errc::kMalformedSource, "line " + std::to_string(lineno) + ": empty sample_id or rater_id");
    }
    out.push_back(std::move(r));
  }
  if (!header) throw Error(Errc::kMalformedSource, "ratings file has no header");
  ValidateRatings(out);
  return out;
}

std::vector<RatingRecord> ReadRatingsCsv(const std::filesystem::path& path) {
  try {
    return ParseRatingsCsv(files::ReadText(path));
  } catch (const Error& e) {
    if (e.code() == Errc::kMalformedSource) throw Error(e.code(), path.string() + ": " + e.message(), e.detail());
    throw;
  }
}

std::string ToCsv(const std::vector<RatingRecord>& ratings) {
  std::string out = std::string(kRatingsHeader) + "\n";
  for (const auto& r : ratings) {
    out += CsvField(r.sample_id) + "," + std::to_string(r.stage) + "," + CsvField(r.rater_id) + "," +
           std::to_string(r.correctness) + "," + std::to_string(r.completeness) + "," + std::to_string(r.clarity) +
           "\n";
  }
  return out;
}

int ScoreRank(int score) {
  switch (score) {
    case 1: return 1;
    case 3: return 2;
    case 5: return 3;
  }
  throw Error(Errc::kIllegalScore, "score " + std::to_string(score) + " is not one of 1, 3, 5", {{"score", score}});
}

void ValidateRatings(const std::vector<RatingRecord>& ratings) {
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, int> stage_of;
  for (const auto& r : ratings) {
    if (r.stage < 1 || r.stage > 5) {
      throw Error(Errc::kIllegalScore, r.sample_id + ": stage " + std::to_string(r.stage) + " outside 1..5");
    }
    for (auto d : kDimensions) {
      try {
        ScoreRank(r.Score(d));
      } catch (const Error&) {
        throw Error(Errc::kIllegalScore,
                    r.sample_id + "/" + r.rater_id + ": " + std::string(DimensionName(d)) + " score " +
                        std::to_string(r.Score(d)) + " is not one of 1, 3, 5",
                    {{"sample_id", r.sample_id}, {"rater_id", r.rater_id}, {"dimension", DimensionName(d)}});
      }
    }
    if (!seen.emplace(r.sample_id, r.rater_id).second) {
      throw Error(Errc::kInvalidArgument, "duplicate rating for sample " + r.sample_id + " by " + r.rater_id);
    }
    auto [it, fresh] = stage_of.emplace(r.sample_id, r.stage);
    if (!fresh && it->second != r.stage) {
      throw Error(Errc::kInvalidArgument, "sample " + r.sample_id + " appears under two stages");
    }
  }
}

AgreementRates ComputeAgreementRates(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) throw Error(Errc::kEmptyInput, "no rating pairs");
  AgreementRates a;
  std::size_t exact = 0, within = 0;
  for (const auto& [x, y] : pairs) {
    const int d = std::abs(ScoreRank(x) - ScoreRank(y));
    exact += d == 0;
    within += d <= 1;
  }
  a.pairs = pairs.size();
  a.exact_pct = 100.0 * static_cast<double>(exact) / static_cast<double>(pairs.size());
  a.within_one_pct = 100.0 * static_cast<double>(within) / static_cast<double>(pairs.size());
  return a;
}

std::string StageCell::Formatted() const { return OneDecimal(mean) + " \xC2\xB1 " + OneDecimal(sd); }

StageSummary ComputeStageSummary(const std::vector<RatingRecord>& ratings) {
  std::map<int, std::map<std::string, std::vector<int>>> values;
  for (const auto& r : ratings) {
    for (auto d : kDimensions) {
      values[r.stage][std::string(DimensionName(d))].push_back(r.Score(d));
      values[r.stage]["average"].push_back(r.Score(d));
    }
  }
  StageSummary out;
  for (const auto& [stage, cols] : values) {
    for (const auto& [name, xs] : cols) out[stage][name] = Cell(xs);
  }
  return out;
}

nlohmann::json AgreementReport::ToJson() const {
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& [stage, cols] : per_stage_means) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [name, c] : cols) {
      s[name] = {{"mean", c.mean}, {"sd", c.sd}, {"n", c.n}, {"formatted", c.Formatted()}};
    }
    stages[std::to_string(stage)] = s;
  }
  return {{"icc_overall", icc_overall},
          {"icc_correctness", icc_correctness},
          {"icc_completeness", icc_completeness},
          {"icc_clarity", icc_clarity},
          {"exact_pct", exact_pct},
          {"within_one_pct", within_one_pct},
          {"per_stage_means", stages},
          {"raters", raters},
          {"subjects_used", subjects_used},
          {"subjects_dropped", subjects_dropped},
          {"rater_pairs", rater_pairs},
          {"zero_variance", zero_variance},
          {"icc_model", icc_model}};
}

AgreementReport ComputeAgreementReport(const std::vector<RatingRecord>& ratings, IccModel model) {
  ValidateRatings(ratings);
  if (ratings.empty()) throw Error(Errc::kEmptyInput, "no ratings");
  AgreementReport rep;
  rep.icc_model = std::string(IccModelName(model));
  std::set<std::string> raters;
  std::map<std::string, std::map<std::string, const RatingRecord*>> by_sample;
  for (const auto& r : ratings) {
    raters.insert(r.rater_id);
    by_sample[r.sample_id][r.rater_id] = &r;
  }
  rep.raters = raters.size();

  std::map<Dimension, ScoreMatrix> per_dim;
  ScoreMatrix stacked;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [sample, rows] : by_sample) {
    for (auto d : kDimensions) {
      std::vector<const RatingRecord*> rs;
      for (const auto& [rid, rec] : rows) rs.push_back(rec);
      for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = i + 1; j < rs.size(); ++j) pairs.emplace_back(rs[i]->Score(d), rs[j]->Score(d));
      }
    }
    if (rows.size() != raters.size()) {
      ++rep.subjects_dropped;
      continue;
    }
    ++rep.subjects_used;
    for (auto d : kDimensions) {
      std::vector<double> row;
      for (const auto& rid : raters) row.push_back(rows.at(rid)->Score(d));
      per_dim[d].push_back(row);
      stacked.push_back(row);
    }
  }
  auto icc = [&](const ScoreMatrix& m, const std::string& name) {
    auto r = ComputeIcc(m, model);
    if (r.zero_variance) rep.zero_variance.push_back(name);
    return r.value;
  };
  rep.icc_overall = icc(stacked, "overall");
  rep.icc_correctness = icc(per_dim[Dimension::kCorrectness], "correctness");
  rep.icc_completeness = icc(per_dim[Dimension::kCompleteness], "completeness");
  rep.icc_clarity = icc(per_dim[Dimension::kClarity], "clarity");
  const auto rates = ComputeAgreementRates(pairs);
  rep.exact_pct = rates.exact_pct;
  rep.within_one_pct = rates.within_one_pct;
  rep.rater_pairs = rates.pairs;
  rep.per_stage_means = ComputeStageSummary(ratings);
  return rep;
}

}  // namespace medforge::quality
