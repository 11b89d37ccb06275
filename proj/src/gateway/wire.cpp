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

#include "medforge/gateway/wire.hpp"

#include <algorithm>

#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"

namespace medforge::gateway {

std::string WirePath(CallKind kind) {
  return kind == CallKind::kEmbed ? "/embeddings" : "/chat/completions";
}

nlohmann::json BuildRequestBody(const EndpointConfig& config, const ModelCall& call) {
  nlohmann::json body;
  body["model"] = config.model_name;
  if (call.kind == CallKind::kEmbed) {
    nlohmann::json input = nlohmann::json::array();
    for (const auto& p : call.parts) input.push_back(p.text);
    body["input"] = std::move(input);
    return body;
  }
  nlohmann::json content = nlohmann::json::array();
  for (const auto& p : call.parts) {
    if (p.type == Part::Type::kText) {
      content.push_back({{"type", "text"}, {"text", p.text}});
    } else {
      const auto& bytes = p.image_bytes ? *p.image_bytes : std::vector<std::uint8_t>{};
      content.push_back({{"type", "image_url"},
                         {"image_url", {{"url", "data:" + p.mime + ";base64," + Base64Encode(bytes)}}}});
    }
  }
  nlohmann::json messages = nlohmann::json::array();
  if (!call.system_prompt.empty()) messages.push_back({{"role", "system"}, {"content", call.system_prompt}});
  messages.push_back({{"role", "user"}, {"content", std::move(content)}});
  body["messages"] = std::move(messages);
  body["temperature"] = call.sampling.temperature;
  body["max_tokens"] = call.sampling.max_tokens;
  if (call.sampling.seed) body["seed"] = *call.sampling.seed;
  return body;
}

namespace {

[[noreturn]] void Malformed(const std::string& why, const std::string& body) {
  throw Error(Errc::kMalformedReply, why, {{"raw_body", body}});
}

}  // namespace

Reply ParseResponseBody(CallKind kind, const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    Malformed(std::string("reply is not JSON: ") + e.what(), body);
  }
  Reply r;
  try {
    if (j.contains("usage") && j["usage"].is_object()) {
      r.usage.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
      r.usage.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
    }
    if (kind == CallKind::kEmbed) {
      const auto& data = j.at("data");
      if (!data.is_array() || data.empty()) Malformed("reply has no embeddings", body);
      std::vector<std::pair<std::int64_t, std::vector<double>>> rows;
      for (std::size_t i = 0; i < data.size(); ++i) {
        rows.emplace_back(data[i].value("index", static_cast<std::int64_t>(i)),
                          data[i].at("embedding").get<std::vector<double>>());
      }
      std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& row : rows) r.vectors.push_back(std::move(row.second));
    } else {
      const auto& content = j.at("choices").at(0).at("message").at("content");
      if (!content.is_string()) Malformed("message content is not a string", body);
      r.text = content.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    Malformed(std::string("unexpected reply shape: ") + e.what(), body);
  }
  return r;
}

}  // namespace medforge::gateway
