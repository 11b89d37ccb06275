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

#include "medforge/eval/report.hpp"

#include <fstream>
#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/eval/embedding_metrics.hpp"
#include "medforge/eval/judge.hpp"
#include "medforge/eval/multichoice.hpp"
#include "medforge/eval/text_metrics.hpp"

namespace medforge::eval {

std::map<std::string, std::string> ReadPredictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto id = j.at("record_id").get<std::string>();
      if (!out.emplace(id, j.at("prediction").get<std::string>()).second) {
        throw Error(Errc::kInvalidArgument, path.string() + " line " + std::to_string(n) + ": duplicate record_id " + id);
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kMalformedSource, path.string() + " line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

nlohmann::json EvaluatePredictions(const std::vector<forge::InstructionRecord>& records,
                                   const std::map<std::string, std::string>& predictions,
                                   gateway::ModelGateway* gw, const EvalEndpoints& endpoints) {
  std::map<std::string, std::vector<TextPair>> open;
  std::vector<MultiChoiceItem> choice;
  std::size_t missing = 0;
  std::set<std::string> known;
  for (const auto& r : records) {
    known.insert(r.record_id);
    auto it = predictions.find(r.record_id);
    if (it == predictions.end()) {
      ++missing;
      continue;
    }
    if (r.task_type == forge::TaskType::kMultiChoice) {
      MultiChoiceItem item;
      item.gold = r.correct_option ? (*r.correct_option)[0] : 'A';
      item.predicted = ExtractLetter(it->second, r.options.value_or(std::vector<std::string>{}));
      choice.push_back(item);
    } else {
      open[std::string(forge::TaskTypeName(r.task_type))].push_back({it->second, r.answer});
    }
  }
  std::size_t unknown = 0;
  for (const auto& [id, p] : predictions) unknown += known.count(id) == 0;

  nlohmann::json report;
  nlohmann::json tables = nlohmann::json::object();
  for (const auto& [type, pairs] : open) {
    const auto bleu = BatchBleu4(pairs);
    const auto rouge = BatchRougeL(pairs);
    double b = 0, rl = 0, bs = 0, sts = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      b += bleu[i];
      rl += rouge[i].f;
      if (gw && endpoints.bertscore) bs += BertScoreOf(pairs[i], *gw, *endpoints.bertscore).f1;
      if (gw && endpoints.sts) sts += Sts(pairs[i], *gw, *endpoints.sts);
    }
    const double n = static_cast<double>(pairs.size());
    nlohmann::json row = {{"n", pairs.size()}, {"BLEU@4", 100.0 * b / n}, {"ROUGE-L", 100.0 * rl / n}};
    row["BERTScore"] = gw && endpoints.bertscore ? nlohmann::json(100.0 * bs / n) : nlohmann::json(nullptr);
    row["STS"] = gw && endpoints.sts ? nlohmann::json(sts / n) : nlohmann::json(nullptr);
    tables[type] = row;
  }
  report["open_ended"] = tables;
  if (!choice.empty()) {
    const auto s = ScoreMultiChoice(choice);
    report["multi_choice"] = {{"n", s.n},
                              {"Accuracy", s.accuracy},
                              {"F1", s.macro_f1},
                              {"Recall", s.macro_recall},
                              {"Precision", s.macro_precision},
                              {"invalid_predictions", s.invalid}};
  } else {
    report["multi_choice"] = nullptr;
  }
  report["missing_predictions"] = missing;
  report["unknown_predictions"] = unknown;
  return report;
}

nlohmann::json JudgePredictions(const std::vector<forge::InstructionRecord>& records,
                                const std::map<std::string, std::string>& predictions_a,
                                const std::map<std::string, std::string>& predictions_b,
                                gateway::ModelGateway& gw, const gateway::EndpointConfig& judge,
                                std::uint64_t seed) {
  std::map<std::string, std::vector<JudgeVerdict>> by_type;
  std::vector<JudgeVerdict> all;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& r : records) {
    if (r.task_type == forge::TaskType::kMultiChoice) continue;
    auto a = predictions_a.find(r.record_id);
    auto b = predictions_b.find(r.record_id);
    if (a == predictions_a.end() || b == predictions_b.end()) continue;
    auto v = JudgePairwise(r.answer, a->second, b->second, gw, judge, DeriveSeed(seed, r.record_id));
    items.push_back({{"record_id", r.record_id},
                     {"outcome", std::string(OutcomeName(v.outcome))},
                     {"swapped", v.swapped},
                     {"rationale", v.rationale}});
    by_type[std::string(forge::TaskTypeName(r.task_type))].push_back(v);
    all.push_back(std::move(v));
  }
  nlohmann::json per_type = nlohmann::json::object();
  for (const auto& [t, vs] : by_type) per_type[t] = Summarize(vs).ToJson();
  return {{"overall", Summarize(all).ToJson()}, {"by_task_type", per_type}, {"items", items}};
}

}  // namespace medforge::eval
