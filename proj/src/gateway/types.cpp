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

#include "medforge/gateway/types.hpp"

#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"

namespace medforge::gateway {

void Validate(const EndpointConfig& c) {
  if (c.endpoint_id.empty()) throw Error(Errc::kInvalidConfig, "endpoint_id is empty");
  if (c.requests_per_minute < 1) {
    throw Error(Errc::kInvalidConfig, c.endpoint_id + ": requests_per_minute must be >= 1");
  }
  if (!(c.timeout_seconds > 0)) throw Error(Errc::kInvalidConfig, c.endpoint_id + ": timeout must be > 0");
  if (c.max_retries < 0) throw Error(Errc::kInvalidConfig, c.endpoint_id + ": max_retries must be >= 0");
  if (c.backend != "http" && c.backend != "mock") {
    throw Error(Errc::kInvalidConfig, c.endpoint_id + ": backend must be \"http\" or \"mock\"");
  }
  if (c.backend == "http" && c.base_url.empty()) {
    throw Error(Errc::kInvalidConfig, c.endpoint_id + ": base_url is required for http endpoints");
  }
}

EndpointConfig EndpointFromJson(const nlohmann::json& j) {
  EndpointConfig c;
  try {
    c.endpoint_id = j.at("endpoint_id").get<std::string>();
    c.base_url = j.value("base_url", "");
    c.model_name = j.value("model_name", "");
    c.credential_ref = j.value("credential_ref", "");
    c.requests_per_minute = j.value("requests_per_minute", c.requests_per_minute);
    c.timeout_seconds = j.value("timeout", c.timeout_seconds);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.backend = j.value("backend", c.backend);
    c.backoff_base_seconds = j.value("backoff_base", c.backoff_base_seconds);
    c.backoff_max_seconds = j.value("backoff_max", c.backoff_max_seconds);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidConfig, std::string("endpoint: ") + e.what());
  }
  if (j.contains("api_key")) {
    throw Error(Errc::kInvalidConfig,
                c.endpoint_id + ": credentials belong in the environment variable named by credential_ref");
  }
  Validate(c);
  return c;
}

nlohmann::json ToJson(const EndpointConfig& c) {
  return {{"endpoint_id", c.endpoint_id},     {"base_url", c.base_url},
          {"model_name", c.model_name},       {"credential_ref", c.credential_ref},
          {"requests_per_minute", c.requests_per_minute}, {"timeout", c.timeout_seconds},
          {"max_retries", c.max_retries},     {"backend", c.backend},
          {"backoff_base", c.backoff_base_seconds}, {"backoff_max", c.backoff_max_seconds}};
}

std::string_view CallKindName(CallKind kind) {
  switch (kind) {
    case CallKind::kChat: return "chat";
    case CallKind::kVisionChat: return "vision_chat";
    case CallKind::kEmbed: return "embed";
  }
  return "chat";
}

Part Part::Text(std::string text) {
  Part p;
  p.type = Type::kText;
  p.text = std::move(text);
  return p;
}

Part Part::Image(std::vector<std::uint8_t> bytes, std::string mime) {
  Part p;
  p.type = Type::kImage;
  p.image_digest = Sha256Hex(std::span<const std::uint8_t>(bytes));
  p.image_bytes = std::make_shared<const std::vector<std::uint8_t>>(std::move(bytes));
  p.mime = std::move(mime);
  return p;
}

std::string ModelCall::JoinedText() const {
  std::string out;
  for (const auto& p : parts) {
    if (p.type != Part::Type::kText) continue;
    if (!out.empty()) out.push_back('\n');
    out += p.text;
  }
  return out;
}

void Validate(const ModelCall& call) {
  std::size_t images = 0;
  for (const auto& p : call.parts) images += p.type == Part::Type::kImage;
  if (call.kind == CallKind::kVisionChat && images == 0) {
    throw Error(Errc::kInvalidArgument, "vision_chat call without an image part");
  }
  if (call.kind != CallKind::kVisionChat && images > 0) {
    throw Error(Errc::kInvalidArgument, std::string(CallKindName(call.kind)) + " call with an image part");
  }
  if (call.kind == CallKind::kEmbed && call.parts.empty()) {
    throw Error(Errc::kInvalidArgument, "embed call without text");
  }
}

nlohmann::json ToJson(const Reply& reply) {
  nlohmann::json j;
  j["text"] = reply.text;
  j["vectors"] = reply.vectors;
  j["usage"] = {{"prompt_tokens", reply.usage.prompt_tokens},
                {"completion_tokens", reply.usage.completion_tokens}};
  return j;
}

Reply ReplyFromJson(const nlohmann::json& j) {
  Reply r;
  r.text = j.at("text").get<std::string>();
  r.vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
  r.usage.prompt_tokens = j.at("usage").at("prompt_tokens").get<std::int64_t>();
  r.usage.completion_tokens = j.at("usage").at("completion_tokens").get<std::int64_t>();
  return r;
}

}  // namespace medforge::gateway
