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

#include "medforge/bench/curation.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>

#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"

namespace medforge::bench {

std::string_view ItemStateName(ItemState s) {
  switch (s) {
    case ItemState::kPending: return "pending";
    case ItemState::kInReview: return "in_review";
    case ItemState::kConflict: return "conflict";
    case ItemState::kAccepted: return "accepted";
    case ItemState::kRejected: return "rejected";
  }
  return "pending";
}

std::string_view DecisionName(Decision d) { return d == Decision::kAccept ? "accept" : "reject"; }

std::optional<Decision> DecisionFromName(std::string_view name) {
  if (name == "accept") return Decision::kAccept;
  if (name == "reject") return Decision::kReject;
  return std::nullopt;
}

namespace {

nlohmann::json ScoresJson(const std::optional<Scores>& s) {
  if (!s) return nullptr;
  return {{"correctness", s->correctness}, {"completeness", s->completeness}, {"clarity", s->clarity}};
}

std::optional<Scores> ScoresFromJson(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  Scores s;
  s.correctness = j.at("correctness").get<int>();
  s.completeness = j.at("completeness").get<int>();
  s.clarity = j.at("clarity").get<int>();
  return s;
}

bool LegalScore(int v) { return v == 1 || v == 3 || v == 5; }

bool Terminal(ItemState s) { return s == ItemState::kAccepted || s == ItemState::kRejected; }

}  // namespace

nlohmann::json ToJson(const Verdict& v) {
  return {{"rater_id", v.rater_id},   {"decision", std::string(DecisionName(v.decision))},
          {"scores", ScoresJson(v.scores)}, {"timestamp", v.timestamp},
          {"revision", v.revision},   {"adjudicator", v.adjudicator}};
}

nlohmann::json ToJson(const CurationItem& item) {
  nlohmann::json verdicts = nlohmann::json::array(), history = nlohmann::json::array();
  for (const auto& v : item.verdicts) verdicts.push_back(ToJson(v));
  for (const auto& v : item.history) history.push_back(ToJson(v));
  return {{"item_id", item.item_id},
          {"state", std::string(ItemStateName(item.state))},
          {"revision", item.revision},
          {"record", forge::ToJson(item.record)},
          {"verdicts", verdicts},
          {"history", history}};
}

ItemState StateFor(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (v.adjudicator) return v.decision == Decision::kAccept ? ItemState::kAccepted : ItemState::kRejected;
  }
  if (verdicts.empty()) return ItemState::kPending;
  if (verdicts.size() == 1) return ItemState::kInReview;
  std::size_t accepts = 0, rejects = 0;
  for (const auto& v : verdicts) (v.decision == Decision::kAccept ? accepts : rejects)++;
  if (rejects == 0) return ItemState::kAccepted;
  if (accepts == 0) return ItemState::kRejected;
  return ItemState::kConflict;
}

std::string CurationStore::SystemTime() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CurationStore::CurationStore(std::filesystem::path log_path, TimeSource now)
    : log_path_(std::move(log_path)), now_(now ? std::move(now) : TimeSource(SystemTime)) {
  if (log_path_.empty() || !std::filesystem::exists(log_path_)) return;
  std::ifstream in(log_path_);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      Apply(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      throw Error(Errc::kMalformedSource, log_path_.string() + " line " + std::to_string(n) + ": " + e.what());
    }
  }
}

CurationItem& CurationStore::Find(const std::string& item_id) {
  auto it = index_.find(item_id);
  if (it == index_.end()) throw Error(Errc::kUnknownItem, "unknown item '" + item_id + "'", {{"item_id", item_id}});
  return items_[it->second];
}

void CurationStore::Apply(const nlohmann::json& e) {
  seq_ = std::max(seq_, e.at("seq").get<std::uint64_t>());
  const std::string type = e.at("type");
  const std::string id = e.at("item_id");
  if (type == "add") {
    CurationItem item;
    item.item_id = id;
    item.record = forge::RecordFromJson(e.at("record"));
    index_[id] = items_.size();
    items_.push_back(std::move(item));
    return;
  }
  CurationItem& item = Find(id);
  if (type == "verdict") {
    Verdict v;
    v.rater_id = e.at("rater_id");
    v.decision = *DecisionFromName(e.at("decision").get<std::string>());
    v.scores = ScoresFromJson(e.at("scores"));
    v.timestamp = e.at("timestamp");
    v.revision = e.at("revision");
    v.adjudicator = e.value("adjudicator", false);
    item.verdicts.push_back(v);
    item.history.push_back(v);
    item.state = StateFor(item.verdicts);
    if (item.state == ItemState::kAccepted) item.accepted_seq = e.at("seq").get<std::uint64_t>();
  } else if (type == "revise") {
    item.revision = e.at("revision");
    item.verdicts.clear();
    item.state = ItemState::kPending;
    item.accepted_seq.reset();
    const auto& ch = e.at("changes");
    if (ch.contains("context")) item.record.context = ch["context"];
    if (ch.contains("question")) item.record.question = ch["question"];
    if (ch.contains("answer")) item.record.answer = ch["answer"];
  } else {
    throw Error(Errc::kMalformedSource, "unknown event type '" + type + "'");
  }
}

void CurationStore::Append(nlohmann::json event) {
  event["seq"] = ++seq_;
  if (!log_path_.empty()) files::Append(log_path_, event.dump() + "\n");
  Apply(event);
}

std::vector<std::string> CurationStore::AddItems(const std::vector<forge::InstructionRecord>& records) {
  std::unique_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& r : records) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "item-%04zu", items_.size() + 1);
    Append({{"type", "add"}, {"item_id", buf}, {"record", forge::ToJson(r)}});
    ids.emplace_back(buf);
  }
  return ids;
}

ItemState CurationStore::SubmitVerdict(const std::string& item_id, const VerdictRequest& req) {
  std::unique_lock lock(mu_);
  CurationItem& item = Find(item_id);
  if (req.rater_id.empty()) throw Error(Errc::kInvalidArgument, "rater_id is required");
  if (req.scores) {
    for (int s : {req.scores->correctness, req.scores->completeness, req.scores->clarity}) {
      if (!LegalScore(s)) throw Error(Errc::kInvalidArgument, "scores must be 1, 3 or 5", {{"score", s}});
    }
  }
  if (req.revision != item.revision) {
    throw Error(Errc::kStaleRevision,
                item_id + " is at revision " + std::to_string(item.revision) + ", not " + std::to_string(req.revision),
                {{"item_id", item_id}, {"revision", item.revision}});
  }
  if (Terminal(item.state)) {
    throw Error(Errc::kTerminalState, item_id + " is already " + std::string(ItemStateName(item.state)),
                {{"item_id", item_id}, {"state", ItemStateName(item.state)}});
  }
  for (const auto& v : item.verdicts) {
    if (v.rater_id == req.rater_id) {
      throw Error(Errc::kDuplicateVerdict, req.rater_id + " already reviewed " + item_id + " at this revision",
                  {{"item_id", item_id}, {"rater_id", req.rater_id}, {"revision", item.revision}});
    }
  }
  if (item.state == ItemState::kConflict && !req.adjudicator) {
    throw Error(Errc::kTerminalState, item_id + " is in conflict; it needs an adjudicator verdict or a revision",
                {{"item_id", item_id}, {"state", "conflict"}});
  }
  if (req.adjudicator && item.state != ItemState::kConflict) {
    throw Error(Errc::kInvalidArgument, "adjudicator verdicts apply to conflict items only");
  }
  Append({{"type", "verdict"},
          {"item_id", item_id},
          {"rater_id", req.rater_id},
          {"decision", std::string(DecisionName(req.decision))},
          {"scores", ScoresJson(req.scores)},
          {"revision", req.revision},
          {"adjudicator", req.adjudicator},
          {"timestamp", now_()}});
  return item.state;
}

CurationItem CurationStore::Revise(const std::string& item_id, const ReviseRequest& req) {
  std::unique_lock lock(mu_);
  CurationItem& item = Find(item_id);
  if (req.revision != item.revision) {
    throw Error(Errc::kStaleRevision,
                item_id + " is at revision " + std::to_string(item.revision) + ", not " + std::to_string(req.revision),
                {{"item_id", item_id}, {"revision", item.revision}});
  }
  nlohmann::json changes = nlohmann::json::object();
  if (req.context) changes["context"] = *req.context;
  if (req.question) changes["question"] = *req.question;
  if (req.answer) changes["answer"] = *req.answer;
  Append({{"type", "revise"},
          {"item_id", item_id},
          {"revision", item.revision + 1},
          {"rater_id", req.rater_id},
          {"changes", changes},
          {"note", req.note},
          {"timestamp", now_()}});
  return item;
}

std::optional<CurationItem> CurationStore::Get(const std::string& item_id) const {
  std::shared_lock lock(mu_);
  auto it = index_.find(item_id);
  if (it == index_.end()) return std::nullopt;
  return items_[it->second];
}

std::vector<CurationItem> CurationStore::Items() const {
  std::shared_lock lock(mu_);
  return items_;
}

std::vector<CurationItem> CurationStore::Queue(const std::string& rater_id) const {
  std::shared_lock lock(mu_);
  std::vector<CurationItem> out;
  for (const auto& item : items_) {
    if (Terminal(item.state)) continue;
    bool voted = false;
    for (const auto& v : item.verdicts) voted = voted || v.rater_id == rater_id;
    if (!voted) out.push_back(item);
  }
  return out;
}

std::map<std::string, std::size_t> CurationStore::StateCounts() const {
  std::shared_lock lock(mu_);
  std::map<std::string, std::size_t> counts;
  for (auto s : {ItemState::kPending, ItemState::kInReview, ItemState::kConflict, ItemState::kAccepted,
                 ItemState::kRejected}) {
    counts[std::string(ItemStateName(s))] = 0;
  }
  for (const auto& item : items_) ++counts[std::string(ItemStateName(item.state))];
  return counts;
}

double CurationAgreement(const std::vector<CurationItem>& items) {
  std::size_t dual = 0, matching = 0;
  for (const auto& item : items) {
    std::vector<Decision> first;
    for (const auto& v : item.history) {
      if (!v.adjudicator && first.size() < 2) first.push_back(v.decision);
    }
    if (first.size() < 2) continue;
    ++dual;
    matching += first[0] == first[1];
  }
  if (dual == 0) throw Error(Errc::kNoDualVerdicts, "no item has two verdicts yet");
  return 100.0 * static_cast<double>(matching) / static_cast<double>(dual);
}

}  // namespace medforge::bench
