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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace medforge::gateway {

struct EndpointConfig {
  std::string endpoint_id;
  std::string base_url;        // e.g. "http://localhost:8000/v1"
  std::string model_name;
  std::string credential_ref;  // environment variable holding the API key; empty = none
  int requests_per_minute = 60;
  double timeout_seconds = 60.0;
  int max_retries = 3;
  std::string backend = "http";  // "http" or "mock"
  double backoff_base_seconds = 0.5;
  double backoff_max_seconds = 30.0;
};

// Throws InvalidConfig when an invariant does not hold.
void Validate(const EndpointConfig& config);
EndpointConfig EndpointFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const EndpointConfig& config);

enum class CallKind { kChat, kVisionChat, kEmbed };
std::string_view CallKindName(CallKind kind);

struct Part {
  enum class Type { kText, kImage };
  Type type = Type::kText;
  std::string text;
  std::string image_digest;  // SHA-256 hex of the encoded bytes
  std::shared_ptr<const std::vector<std::uint8_t>> image_bytes;
  std::string mime = "image/png";

  static Part Text(std::string text);
  static Part Image(std::vector<std::uint8_t> bytes, std::string mime = "image/png");
};

struct Sampling {
  double temperature = 0.0;
  int max_tokens = 1024;
  std::optional<std::int64_t> seed;
};

struct ModelCall {
  CallKind kind = CallKind::kChat;
  std::string system_prompt;
  std::vector<Part> parts;
  Sampling sampling;

  std::string JoinedText() const;  // text parts, newline separated
};

// Vision calls need an image part; chat and embed calls take text only.
void Validate(const ModelCall& call);

struct Usage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct Reply {
  std::string text;
  std::vector<std::vector<double>> vectors;
  Usage usage;
};

// Canonical JSON form, used for cache files.
nlohmann::json ToJson(const Reply& reply);
Reply ReplyFromJson(const nlohmann::json& j);

struct InvokeResult {
  Reply reply;
  std::string digest;  // cache key, hex
  bool cache_hit = false;
  int attempts = 0;    // backend attempts; 0 on a cache hit
};

}  // namespace medforge::gateway
