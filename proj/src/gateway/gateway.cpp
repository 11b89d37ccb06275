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

#include "medforge/gateway/gateway.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/gateway/wire.hpp"

namespace medforge::gateway {

namespace {

Clock* PickClock(GatewayOptions& o, std::unique_ptr<Clock>& owned) {
  if (o.clock) return o.clock;
  owned = std::make_unique<SystemClock>();
  return owned.get();
}

std::optional<std::string> GetEnv(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

std::optional<double> RetryAfterSeconds(const HttpResponse& r) {
  for (const auto& [k, v] : r.headers) {
    std::string lower;
    for (char c : k) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower != "retry-after") continue;
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Duration Seconds(double s) {
  return std::chrono::duration_cast<Duration>(std::chrono::duration<double>(std::max(0.0, s)));
}

}  // namespace

ModelGateway::ModelGateway(GatewayOptions options)
    : options_(std::move(options)),
      clock_(PickClock(options_, owned_clock_)),
      transport_(options_.transport),
      mock_(options_.mock),
      limiter_(*clock_) {
  if (!transport_) {
    owned_transport_ = std::make_unique<HttplibTransport>();
    transport_ = owned_transport_.get();
  }
  if (!options_.env) options_.env = GetEnv;
  if (!options_.cache_dir.empty()) cache_.emplace(options_.cache_dir);
}

EndpointConfig ModelGateway::Effective(const EndpointConfig& config) const {
  EndpointConfig c = config;
  if (options_.force_mock) c.backend = "mock";
  return c;
}

std::string ModelGateway::KeyFor(const EndpointConfig& config, const ModelCall& call) const {
  return CacheKey(Effective(config), call);
}

void ModelGateway::Record(const std::string& endpoint_id, const std::function<void(EndpointStats&)>& f) {
  std::lock_guard lock(stats_mu_);
  f(stats_[endpoint_id]);
}

std::map<std::string, EndpointStats> ModelGateway::Stats() const {
  std::lock_guard lock(stats_mu_);
  return stats_;
}

nlohmann::json ModelGateway::StatsJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, s] : Stats()) {
    j[id] = {{"calls", s.calls},           {"cache_hits", s.cache_hits},
             {"backend_requests", s.backend_requests}, {"retries", s.retries},
             {"errors", s.errors},         {"prompt_tokens", s.prompt_tokens},
             {"completion_tokens", s.completion_tokens}};
  }
  return j;
}

Duration ModelGateway::Backoff(const EndpointConfig& config, const std::string& key, int attempt) {
  const double base = config.backoff_base_seconds;
  const double exp = std::min(config.backoff_max_seconds, base * std::ldexp(1.0, std::max(0, attempt - 1)));
  SeededRng rng(DeriveSeed(0, key + "/retry/" + std::to_string(attempt)));
  return Seconds(exp + base * rng.Unit());
}

InvokeResult ModelGateway::Invoke(const EndpointConfig& raw_config, const ModelCall& call) {
  const EndpointConfig config = Effective(raw_config);
  Validate(config);
  Validate(call);
  InvokeResult result;
  result.digest = CacheKey(config, call);
  Record(config.endpoint_id, [](EndpointStats& s) { ++s.calls; });

  if (cache_) {
    if (auto hit = cache_->Get(result.digest)) {
      result.reply = std::move(*hit);
      result.cache_hit = true;
      Record(config.endpoint_id, [](EndpointStats& s) { ++s.cache_hits; });
      return result;
    }
  }

  try {
    if (config.backend == "mock") {
      result.reply = mock_.Complete(call, result.digest);
      result.attempts = 1;
    } else {
      result.reply = CallHttp(config, call, result.digest, result.attempts);
    }
  } catch (const Error&) {
    Record(config.endpoint_id, [](EndpointStats& s) { ++s.errors; });
    throw;
  }
  Record(config.endpoint_id, [&](EndpointStats& s) {
    s.backend_requests += result.attempts;
    s.retries += result.attempts - 1;
    s.prompt_tokens += result.reply.usage.prompt_tokens;
    s.completion_tokens += result.reply.usage.completion_tokens;
  });
  if (cache_) cache_->Put(result.digest, result.reply);
  return result;
}

Reply ModelGateway::CallHttp(const EndpointConfig& config, const ModelCall& call, const std::string& key,
                             int& attempts) {
  HttpRequest req;
  req.base_url = config.base_url;
  req.path = WirePath(call.kind);
  req.timeout_seconds = config.timeout_seconds;
  req.headers["Content-Type"] = "application/json";
  if (!config.credential_ref.empty()) {
    auto secret = options_.env(config.credential_ref);
    if (!secret) {
      throw Error(Errc::kAuthError, config.endpoint_id + ": environment variable " + config.credential_ref +
                                        " is not set",
                  {{"endpoint_id", config.endpoint_id}, {"credential_ref", config.credential_ref}});
    }
    req.headers["Authorization"] = "Bearer " + *secret;
  }
  req.body = BuildRequestBody(config, call).dump();

  std::string last;
  for (int attempt = 1;; ++attempt) {
    req.sent_at = limiter_.Acquire(config.endpoint_id, config.requests_per_minute);
    attempts = attempt;
    const HttpResponse res = transport_->Post(req);
    std::optional<double> retry_after;
    if (res.failure != HttpResponse::Failure::kNone) {
      last = res.failure == HttpResponse::Failure::kTimeout ? "timeout" : "connection failure";
      if (!res.failure_message.empty()) last += ": " + res.failure_message;
    } else if (res.status >= 200 && res.status < 300) {
      return ParseResponseBody(call.kind, res.body);
    } else if (res.status == 401 || res.status == 403) {
      throw Error(Errc::kAuthError, config.endpoint_id + ": HTTP " + std::to_string(res.status),
                  {{"endpoint_id", config.endpoint_id}, {"status", res.status}, {"body", res.body}});
    } else if (res.status == 429 || res.status >= 500) {
      last = "HTTP " + std::to_string(res.status);
      retry_after = RetryAfterSeconds(res);
    } else {
      throw Error(Errc::kBackendRefusal, config.endpoint_id + ": HTTP " + std::to_string(res.status),
                  {{"endpoint_id", config.endpoint_id}, {"status", res.status}, {"body", res.body}});
    }
    if (attempt > config.max_retries) {
      throw Error(Errc::kRateLimitExhausted,
                  config.endpoint_id + ": gave up after " + std::to_string(attempt) + " attempts (" + last + ")",
                  {{"endpoint_id", config.endpoint_id}, {"attempts", attempt}, {"last", last}});
    }
    Duration wait = Backoff(config, key, attempt);
    if (retry_after) wait = std::max(wait, Seconds(*retry_after));
    spdlog::debug("{}: {} on attempt {}, retrying", config.endpoint_id, last, attempt);
    clock_->SleepFor(wait);
  }
}

}  // namespace medforge::gateway
