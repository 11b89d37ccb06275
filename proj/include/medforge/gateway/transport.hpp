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

#include <map>
#include <string>

#include "medforge/gateway/clock.hpp"

namespace medforge::gateway {

struct HttpRequest {
  std::string base_url;  // scheme://host[:port][/prefix]
  std::string path;      // appended to base_url, e.g. "/chat/completions"
  std::map<std::string, std::string> headers;
  std::string body;
  double timeout_seconds = 60.0;
  TimePoint sent_at{0};  // admission time from the rate limiter
};

struct HttpResponse {
  enum class Failure { kNone, kTimeout, kConnection };
  Failure failure = Failure::kNone;
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;
  std::string failure_message;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Must not throw for network-level failures; report them in `failure`.
  virtual HttpResponse Post(const HttpRequest& request) = 0;
};

// cpp-httplib client; https when built with OpenSSL support.
class HttplibTransport : public HttpTransport {
 public:
  HttpResponse Post(const HttpRequest& request) override;
};

struct ParsedUrl {
  std::string scheme_host_port;  // "http://host:port"
  std::string path_prefix;       // "" or "/v1"
};
ParsedUrl SplitBaseUrl(const std::string& base_url);

}  // namespace medforge::gateway
