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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "medforge/forge/records.hpp"

namespace medforge::bench {

enum class ItemState { kPending, kInReview, kConflict, kAccepted, kRejected };
std::string_view ItemStateName(ItemState s);

enum class Decision { kAccept, kReject };
std::string_view DecisionName(Decision d);
std::optional<Decision> DecisionFromName(std::string_view name);

struct Scores {
  int correctness = 5;
  int completeness = 5;
  int clarity = 5;
};

struct Verdict {
  std::string rater_id;
  Decision decision = Decision::kAccept;
  std::optional<Scores> scores;
  std::string timestamp;  // ISO 8601 UTC
  int revision = 0;
  bool adjudicator = false;
};

struct CurationItem {
  std::string item_id;
  forge::InstructionRecord record;
  ItemState state = ItemState::kPending;
  int revision = 0;
  std::vector<Verdict> verdicts;  // current revision
  std::vector<Verdict> history;   // every verdict ever, in order
  std::optional<std::uint64_t> accepted_seq;  // event sequence of acceptance
};

nlohmann::json ToJson(const Verdict& v);
nlohmann::json ToJson(const CurationItem& item);

// Pure transition: the state after `verdicts` at one revision.
ItemState StateFor(const std::vector<Verdict>& verdicts);

struct VerdictRequest {
  std::string rater_id;
  Decision decision = Decision::kAccept;
  std::optional<Scores> scores;
  int revision = 0;
  bool adjudicator = false;
};

struct ReviseRequest {
  int revision = 0;
  std::string rater_id;
  std::optional<std::string> context;
  std::optional<std::string> question;
  std::optional<std::string> answer;
  std::string note;
};

// Items plus their event log. The log is JSONL, one event per line:
//   {"seq", "type": "add", "item_id", "record"}
//   {"seq", "type": "verdict", "item_id", "rater_id", "decision", "scores"|null,
//    "revision", "adjudicator", "timestamp"}
//   {"seq", "type": "revise", "item_id", "revision" (the new one), "rater_id",
//    "changes": {...}, "note", "timestamp"}
// Mutations are serialized and appended before the projection changes.
class CurationStore {
 public:
  using TimeSource = std::function<std::string()>;

  // Replays an existing log. An empty path keeps everything in memory.
  explicit CurationStore(std::filesystem::path log_path = {}, TimeSource now = {});

  // Adds pending items; ids "item-0001", ... continue from the current count.
  std::vector<std::string> AddItems(const std::vector<forge::InstructionRecord>& records);

  // Errors: UnknownItem, StaleRevision, TerminalState, DuplicateVerdict,
  // InvalidArgument (bad scores or rater).
  ItemState SubmitVerdict(const std::string& item_id, const VerdictRequest& req);
  CurationItem Revise(const std::string& item_id, const ReviseRequest& req);

  std::optional<CurationItem> Get(const std::string& item_id) const;
  std::vector<CurationItem> Items() const;
  // Open items the rater has not voted on at the current revision.
  std::vector<CurationItem> Queue(const std::string& rater_id) const;
  std::map<std::string, std::size_t> StateCounts() const;

  static std::string SystemTime();

 private:
  void Apply(const nlohmann::json& event);
  void Append(nlohmann::json event);
  CurationItem& Find(const std::string& item_id);

  std::filesystem::path log_path_;
  TimeSource now_;
  mutable std::shared_mutex mu_;
  std::vector<CurationItem> items_;
  std::map<std::string, std::size_t> index_;
  std::uint64_t seq_ = 0;
};

// Share of items with two or more non-adjudicator verdicts (whole history)
// whose first two decisions match, x100. Throws NoDualVerdicts.
double CurationAgreement(const std::vector<CurationItem>& items);

}  // namespace medforge::bench
