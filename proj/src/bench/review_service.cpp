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

#include "medforge/bench/review_service.hpp"

#include <fstream>
#include <regex>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "medforge/common/error.hpp"
#include "medforge/bench/export.hpp"
#include "medforge/common/files.hpp"

namespace medforge::bench {

namespace {

ApiResponse Json(int status, const nlohmann::json& j) { return {status, "application/json", j.dump()}; }

ApiResponse ErrorResponse(const Error& e) {
  return Json(HttpStatusFor(e.code()),
              {{"error", std::string(ErrcName(e.code()))}, {"message", e.message()}, {"detail", e.detail()}});
}

ApiResponse BadRequest(const std::string& message) {
  return Json(400, {{"error", "InvalidArgument"}, {"message", message}, {"detail", nullptr}});
}

std::string MimeFor(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".json") return "application/json";
  if (ext == ".html") return "text/html";
  if (ext == ".js") return "text/javascript";
  if (ext == ".css") return "text/css";
  return "application/octet-stream";
}

nlohmann::json ParseBody(const std::string& body) {
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::kInvalidArgument, "request body must be a JSON object");
  return j;
}

VerdictRequest VerdictFromJson(const nlohmann::json& j) {
  VerdictRequest v;
  try {
    v.rater_id = j.at("rater_id").get<std::string>();
    auto d = DecisionFromName(j.at("decision").get<std::string>());
    if (!d) throw Error(Errc::kInvalidArgument, "decision must be \"accept\" or \"reject\"");
    v.decision = *d;
    v.revision = j.at("revision").get<int>();
    v.adjudicator = j.value("adjudicator", false);
    if (j.contains("scores") && !j["scores"].is_null()) {
      Scores s;
      s.correctness = j["scores"].at("correctness").get<int>();
      s.completeness = j["scores"].at("completeness").get<int>();
      s.clarity = j["scores"].at("clarity").get<int>();
      v.scores = s;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("verdict: ") + e.what());
  }
  return v;
}

ReviseRequest ReviseFromJson(const nlohmann::json& j) {
  ReviseRequest r;
  try {
    r.revision = j.at("revision").get<int>();
    r.rater_id = j.value("rater_id", "");
    r.note = j.value("note", "");
    if (j.contains("context")) r.context = j["context"].get<std::string>();
    if (j.contains("question")) r.question = j["question"].get<std::string>();
    if (j.contains("answer")) r.answer = j["answer"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("revise: ") + e.what());
  }
  return r;
}

// Resolves rel under root, refusing anything that escapes it.
std::optional<std::filesystem::path> Contained(const std::filesystem::path& root, const std::string& rel) {
  if (root.empty()) return std::nullopt;
  std::error_code ec;
  auto base = std::filesystem::weakly_canonical(root, ec);
  auto full = std::filesystem::weakly_canonical(root / rel, ec);
  if (ec) return std::nullopt;
  auto b = base.generic_string(), f = full.generic_string();
  if (f.size() <= b.size() || f.compare(0, b.size(), b) != 0 || f[b.size()] != '/') return std::nullopt;
  if (!std::filesystem::is_regular_file(full)) return std::nullopt;
  return full;
}

}  // namespace

int HttpStatusFor(Errc code) {
  switch (code) {
    case Errc::kUnknownItem:
    case Errc::kUnknownFigureId: return 404;
    case Errc::kDuplicateVerdict:
    case Errc::kTerminalState:
    case Errc::kStaleRevision: return 409;
    case Errc::kInvalidArgument:
    case Errc::kIllegalScore: return 400;
    default: return 500;
  }
}

ReviewApi::ReviewApi(CurationStore& store, ReviewOptions options) : store_(store), options_(std::move(options)) {
  const auto index = options_.dataset_dir / "figures.jsonl";
  if (options_.dataset_dir.empty() || !std::filesystem::exists(index)) return;
  std::ifstream in(index);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      spdlog::warn("skipping malformed line in {}", index.string());
      continue;
    }
    auto key = j.value("article_id", "") + "/" + j.value("figure_id", "");
    figures_[key] = std::move(j);
  }
}

nlohmann::json ReviewApi::ItemView(const CurationItem& item) const {
  nlohmann::json view = ToJson(item);
  nlohmann::json images = nlohmann::json::array();
  for (const auto& img : item.record.images) images.push_back("/api/files/" + img);
  view["image_urls"] = images;
  const auto key = item.record.provenance.article_id + "/" + item.record.provenance.figure_id;
  auto it = figures_.find(key);
  if (it == figures_.end()) {
    view["figure"] = nullptr;
    return view;
  }
  const auto& fig = it->second.at("figure");
  nlohmann::json panels = nlohmann::json::array();
  for (const auto& p : fig.at("panels")) {
    auto q = p;
    q["image_url"] = "/api/figures/" + key + "?panel=" + p.at("panel_id").get<std::string>();
    panels.push_back(q);
  }
  view["figure"] = {{"key", key},
                    {"image_url", "/api/figures/" + key},
                    {"width", fig.at("image_width")},
                    {"height", fig.at("image_height")},
                    {"caption", fig.at("caption")},
                    {"panels", panels}};
  return view;
}

ApiResponse ReviewApi::File(const std::string& rel) const {
  auto full = Contained(options_.dataset_dir, rel);
  if (!full) return Json(404, {{"error", "NotFound"}, {"message", "no such file"}, {"detail", rel}});
  auto bytes = files::ReadBytes(*full);
  return {200, MimeFor(*full), std::string(bytes.begin(), bytes.end())};
}

ApiResponse ReviewApi::Figure(const std::string& key, const std::string& panel) const {
  auto it = figures_.find(key);
  if (it == figures_.end()) {
    return ErrorResponse(Error(Errc::kUnknownFigureId, "unknown figure '" + key + "'", {{"figure", key}}));
  }
  if (panel.empty()) return File(it->second.at("image").get<std::string>());
  const auto& pi = it->second.at("panel_images");
  if (!pi.contains(panel)) {
    return ErrorResponse(Error(Errc::kUnknownFigureId, "figure '" + key + "' has no panel '" + panel + "'"));
  }
  return File(pi[panel].get<std::string>());
}

ApiResponse ReviewApi::Handle(const ApiRequest& req) const {
  static const std::regex kItem(R"(^/api/items/([A-Za-z0-9_.-]+)$)");
  static const std::regex kAction(R"(^/api/items/([A-Za-z0-9_.-]+)/(verdict|revise)$)");
  static const std::regex kFigure(R"(^/api/figures/(.+)$)");
  static const std::regex kFile(R"(^/api/files/(.+)$)");
  std::smatch m;
  try {
    if (req.method == "GET") {
      if (req.path == "/api/queue") {
        auto r = req.query.find("rater_id");
        if (r == req.query.end() || r->second.empty()) return BadRequest("rater_id is required");
        nlohmann::json out = nlohmann::json::array();
        for (const auto& item : store_.Queue(r->second)) {
          out.push_back({{"item_id", item.item_id},
                         {"record_id", item.record.record_id},
                         {"task_type", std::string(forge::TaskTypeName(item.record.task_type))},
                         {"state", std::string(ItemStateName(item.state))},
                         {"revision", item.revision}});
        }
        return Json(200, out);
      }
      if (req.path == "/api/stats") return Json(200, CurationStats(store_.Items()));
      if (std::regex_match(req.path, m, kItem)) {
        auto item = store_.Get(m[1]);
        if (!item) throw Error(Errc::kUnknownItem, "unknown item '" + m[1].str() + "'", {{"item_id", m[1].str()}});
        return Json(200, ItemView(*item));
      }
      if (std::regex_match(req.path, m, kFigure)) {
        auto p = req.query.find("panel");
        return Figure(m[1], p == req.query.end() ? "" : p->second);
      }
      if (std::regex_match(req.path, m, kFile)) return File(m[1]);
    } else if (req.method == "POST" && std::regex_match(req.path, m, kAction)) {
      const auto id = m[1].str();
      const auto body = ParseBody(req.body);
      if (m[2] == "verdict") {
        auto state = store_.SubmitVerdict(id, VerdictFromJson(body));
        auto item = store_.Get(id);
        return Json(200, {{"item_id", id}, {"state", std::string(ItemStateName(state))}, {"revision", item->revision}});
      }
      store_.Revise(id, ReviseFromJson(body));
      return Json(200, ItemView(*store_.Get(id)));
    }
  } catch (const Error& e) {
    return ErrorResponse(e);
  }
  return Json(404, {{"error", "NotFound"}, {"message", req.method + " " + req.path}, {"detail", nullptr}});
}

struct ReviewServer::Impl {
  httplib::Server server;
};

ReviewServer::ReviewServer(const ReviewApi& api) : impl_(std::make_unique<Impl>()) {
  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    ApiRequest a;
    a.method = req.method;
    a.path = req.path;
    for (const auto& [k, v] : req.params) a.query[k] = v;
    a.body = req.body;
    auto r = api.Handle(a);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Post(R"(/api/.*)", handler);
  if (!api.options().static_dir.empty()) {
    if (!impl_->server.set_mount_point("/", api.options().static_dir.string())) {
      throw Error(Errc::kIoError, "cannot serve static files from " + api.options().static_dir.string());
    }
  }
}

ReviewServer::~ReviewServer() { Stop(); }

int ReviewServer::Bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(Errc::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void ReviewServer::Listen() { impl_->server.listen_after_bind(); }

void ReviewServer::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace medforge::bench
