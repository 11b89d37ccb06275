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
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "medforge/bench/curation.hpp"
#include "medforge/common/error.hpp"

namespace medforge::bench {

struct ApiRequest {
  std::string method;  // "GET" / "POST"
  std::string path;    // decoded, without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ReviewOptions {
  std::filesystem::path dataset_dir;  // holds figures.jsonl and images/
  std::filesystem::path static_dir;   // optional UI bundle mounted at "/"
};

// Routes:
//   GET  /api/queue?rater_id=R
//   GET  /api/items/{id}
//   POST /api/items/{id}/verdict  {rater_id, decision, scores?, revision, adjudicator?}
//   POST /api/items/{id}/revise   {revision, rater_id?, context?, question?, answer?, note?}
//   GET  /api/stats
//   GET  /api/figures/{article_id}/{figure_id}[?panel=P]
//   GET  /api/files/{path under dataset_dir}
// Errors are {"error": name, "message", "detail"} with 400/404/409.
class ReviewApi {
 public:
  ReviewApi(CurationStore& store, ReviewOptions options);

  ApiResponse Handle(const ApiRequest& req) const;
  const ReviewOptions& options() const { return options_; }

 private:
  nlohmann::json ItemView(const CurationItem& item) const;
  ApiResponse Figure(const std::string& key, const std::string& panel) const;
  ApiResponse File(const std::string& rel) const;

  CurationStore& store_;
  ReviewOptions options_;
  std::map<std::string, nlohmann::json> figures_;  // "<article>/<figure>" -> figures.jsonl line
};

int HttpStatusFor(Errc code);

class ReviewServer {
 public:
  explicit ReviewServer(const ReviewApi& api);
  ~ReviewServer();

  // Port 0 picks a free port. Returns the bound port or throws IoError.
  int Bind(const std::string& host, int port);
  void Listen();  // blocks until Stop()
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace medforge::bench
