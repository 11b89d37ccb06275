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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "medforge/gateway/cache.hpp"
#include "medforge/gateway/clock.hpp"
#include "medforge/gateway/mock_backend.hpp"
#include "medforge/gateway/rate_limiter.hpp"
#include "medforge/gateway/transport.hpp"
#include "medforge/gateway/types.hpp"

namespace medforge::gateway {

struct GatewayOptions {
  std::filesystem::path cache_dir;  // empty disables the cache
  bool force_mock = false;          // every endpoint served by the mock
  MockOptions mock;
  Clock* clock = nullptr;              // default: SystemClock
  HttpTransport* transport = nullptr;  // default: HttplibTransport
  std::function<std::optional<std::string>(const std::string&)> env;  // default: getenv
};

struct EndpointStats {
  std::int64_t calls = 0;
  std::int64_t cache_hits = 0;
  std::int64_t backend_requests = 0;
  std::int64_t retries = 0;
  std::int64_t errors = 0;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

class ModelGateway {
 public:
  explicit ModelGateway(GatewayOptions options = {});
  ModelGateway(const ModelGateway&) = delete;
  ModelGateway& operator=(const ModelGateway&) = delete;

  // Safe for concurrent use.
  InvokeResult Invoke(const EndpointConfig& config, const ModelCall& call);

  // The config actually used for a call (backend forced to mock if requested).
  EndpointConfig Effective(const EndpointConfig& config) const;
  std::string KeyFor(const EndpointConfig& config, const ModelCall& call) const;

  std::map<std::string, EndpointStats> Stats() const;
  nlohmann::json StatsJson() const;
  bool force_mock() const { return options_.force_mock; }

  // Delay before retry number `attempt` (1-based).
  static Duration Backoff(const EndpointConfig& config, const std::string& key, int attempt);

 private:
  Reply CallHttp(const EndpointConfig& config, const ModelCall& call, const std::string& key, int& attempts);
  void Record(const std::string& endpoint_id, const std::function<void(EndpointStats&)>& f);

  GatewayOptions options_;
  std::unique_ptr<Clock> owned_clock_;
  std::unique_ptr<HttpTransport> owned_transport_;
  Clock* clock_;
  HttpTransport* transport_;
  std::optional<ResponseCache> cache_;
  MockBackend mock_;
  RateLimiter limiter_;
  mutable std::mutex stats_mu_;
  std::map<std::string, EndpointStats> stats_;
};

}  // namespace medforge::gateway
