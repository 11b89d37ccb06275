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

#include "medforge/gateway/transport.hpp"

#include <httplib.h>

#include <cmath>

#include "medforge/common/error.hpp"

namespace medforge::gateway {

ParsedUrl SplitBaseUrl(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(Errc::kInvalidConfig, "base_url '" + base_url + "' has no scheme");
  }
  const auto slash = base_url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (slash == std::string::npos) {
    out.scheme_host_port = base_url;
  } else {
    out.scheme_host_port = base_url.substr(0, slash);
    out.path_prefix = base_url.substr(slash);
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') out.path_prefix.pop_back();
  }
  return out;
}

HttpResponse HttplibTransport::Post(const HttpRequest& request) {
  HttpResponse out;
  ParsedUrl url;
  try {
    url = SplitBaseUrl(request.base_url);
  } catch (const Error& e) {
    out.failure = HttpResponse::Failure::kConnection;
    out.failure_message = e.message();
    return out;
  }
  httplib::Client client(url.scheme_host_port);
  const double secs = request.timeout_seconds;
  const auto whole = static_cast<time_t>(std::floor(secs));
  const auto usec = static_cast<time_t>((secs - static_cast<double>(whole)) * 1e6);
  client.set_connection_timeout(whole, usec);
  client.set_read_timeout(whole, usec);
  client.set_write_timeout(whole, usec);

  httplib::Headers headers;
  std::string content_type = "application/json";
  for (const auto& [k, v] : request.headers) {
    if (k == "Content-Type") {
      content_type = v;
    } else {
      headers.emplace(k, v);
    }
  }
  auto res = client.Post(url.path_prefix + request.path, headers, request.body, content_type);
  if (!res) {
    const auto err = res.error();
    out.failure = err == httplib::Error::Read || err == httplib::Error::Write ||
                          err == httplib::Error::ConnectionTimeout
                      ? HttpResponse::Failure::kTimeout
                      : HttpResponse::Failure::kConnection;
    out.failure_message = httplib::to_string(err);
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  for (const auto& [k, v] : res->headers) out.headers[k] = v;
  return out;
}

}  // namespace medforge::gateway
