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

#include "medforge/gateway/rate_limiter.hpp"

namespace medforge::gateway {

RateLimiter::RateLimiter(Clock& clock, Duration window) : clock_(clock), window_(window) {}

TimePoint RateLimiter::Acquire(const std::string& endpoint_id, int requests_per_minute) {
  const std::size_t limit = static_cast<std::size_t>(std::max(1, requests_per_minute));
  std::lock_guard lock(mu_);
  auto& q = admitted_[endpoint_id];
  for (;;) {
    const TimePoint now = clock_.Now();
    while (!q.empty() && q.front() + window_ <= now) q.pop_front();
    if (q.size() < limit) {
      q.push_back(now);
      return now;
    }
    clock_.SleepUntil(q.front() + window_);
  }
}

}  // namespace medforge::gateway
