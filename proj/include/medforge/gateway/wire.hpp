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

#include <string>

#include <nlohmann/json.hpp>

#include "medforge/gateway/types.hpp"

namespace medforge::gateway {

// Request path relative to base_url: "/chat/completions" or "/embeddings".
std::string WirePath(CallKind kind);

// Chat and vision calls:
//   {"model", "messages": [{"role":"system","content":...},
//                          {"role":"user","content":[{"type":"text","text":...},
//                             {"type":"image_url","image_url":{"url":"data:<mime>;base64,..."}}]}],
//    "temperature", "max_tokens", "seed"?}
// Embed calls: {"model", "input": [text, ...]}
nlohmann::json BuildRequestBody(const EndpointConfig& config, const ModelCall& call);

// Reads choices[0].message.content or data[i].embedding plus usage.
// Throws MalformedReply with the raw body in the detail.
Reply ParseResponseBody(CallKind kind, const std::string& body);

}  // namespace medforge::gateway
