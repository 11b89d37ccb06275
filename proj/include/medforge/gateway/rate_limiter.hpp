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

#include <deque>
#include <map>
#include <mutex>
#include <string>

#include "medforge/gateway/clock.hpp"

namespace medforge::gateway {

// Sliding 60 s window per endpoint. Acquire blocks (on the clock) until a
// slot is free, records the admission, and returns its time.
class RateLimiter {
 public:
  explicit RateLimiter(Clock& clock, Duration window = std::chrono::seconds(60));

  TimePoint Acquire(const std::string& endpoint_id, int requests_per_minute);

 private:
  Clock& clock_;
  Duration window_;
  std::mutex mu_;
  std::map<std::string, std::deque<TimePoint>> admitted_;
};

}  // namespace medforge::gateway
