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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "medforge/gateway/types.hpp"

namespace medforge::gateway {

// Line endings normalized to LF, trailing whitespace stripped per line,
// leading and trailing blank lines removed.
std::string CanonicalizePrompt(std::string_view text);

// The JSON document the cache key hashes. Image parts contribute their
// digest only. `backend` is recorded only for the mock so mock replies
// never answer real calls from a shared cache directory.
nlohmann::json CacheKeyMaterial(const EndpointConfig& config, const ModelCall& call);

// SHA-256 hex over the compact dump of CacheKeyMaterial.
std::string CacheKey(const EndpointConfig& config, const ModelCall& call);

// One file per key: <dir>/<hex>.json holding the canonical reply JSON.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  // A missing or unreadable entry is a miss.
  std::optional<Reply> Get(const std::string& key) const;
  void Put(const std::string& key, const Reply& reply) const;
  bool Contains(const std::string& key) const;
  std::filesystem::path PathFor(const std::string& key) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace medforge::gateway
