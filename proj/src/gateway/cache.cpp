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

#include "medforge/gateway/cache.hpp"

#include <spdlog/spdlog.h>

#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"

namespace medforge::gateway {
namespace fs = std::filesystem;

std::string CanonicalizePrompt(std::string_view text) {
  std::vector<std::string> lines;
  std::string line;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      c = '\n';
    }
    if (c == '\n') {
      lines.push_back(std::move(line));
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  lines.push_back(std::move(line));
  for (auto& l : lines) {
    while (!l.empty() && (l.back() == ' ' || l.back() == '\t')) l.pop_back();
  }
  std::size_t b = 0, e = lines.size();
  while (b < e && lines[b].empty()) ++b;
  while (e > b && lines[e - 1].empty()) --e;
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

nlohmann::json CacheKeyMaterial(const EndpointConfig& config, const ModelCall& call) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : call.parts) {
    if (p.type == Part::Type::kText) {
      parts.push_back({{"text", CanonicalizePrompt(p.text)}});
    } else {
      parts.push_back({{"image", p.image_digest}});
    }
  }
  nlohmann::json sampling = {{"temperature", call.sampling.temperature},
                             {"max_tokens", call.sampling.max_tokens},
                             {"seed", call.sampling.seed ? nlohmann::json(*call.sampling.seed)
                                                         : nlohmann::json(nullptr)}};
  nlohmann::json j = {{"endpoint_id", config.endpoint_id},
                      {"model_name", config.model_name},
                      {"kind", std::string(CallKindName(call.kind))},
                      {"system", CanonicalizePrompt(call.system_prompt)},
                      {"parts", std::move(parts)},
                      {"sampling", std::move(sampling)}};
  if (config.backend == "mock") j["backend"] = "mock";
  return j;
}

std::string CacheKey(const EndpointConfig& config, const ModelCall& call) {
  return Sha256Hex(CacheKeyMaterial(config, call).dump());
}

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(Errc::kIoError, "cannot create cache dir " + dir_.string() + ": " + ec.message());
}

fs::path ResponseCache::PathFor(const std::string& key) const { return dir_ / (key + ".json"); }

bool ResponseCache::Contains(const std::string& key) const { return fs::exists(PathFor(key)); }

std::optional<Reply> ResponseCache::Get(const std::string& key) const {
  const auto path = PathFor(key);
  if (!fs::exists(path)) return std::nullopt;
  try {
    return ReplyFromJson(nlohmann::json::parse(files::ReadText(path)));
  } catch (const std::exception& e) {
    spdlog::warn("cache entry {} unreadable, treating as miss: {}", path.string(), e.what());
    return std::nullopt;
  }
}

void ResponseCache::Put(const std::string& key, const Reply& reply) const {
  files::WriteAtomic(PathFor(key), ToJson(reply).dump());
}

}  // namespace medforge::gateway
