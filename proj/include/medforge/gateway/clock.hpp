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

#include <chrono>
#include <mutex>
#include <vector>

namespace medforge::gateway {

using Duration = std::chrono::nanoseconds;
// Time since an arbitrary epoch.
using TimePoint = std::chrono::nanoseconds;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual TimePoint Now() const = 0;
  virtual void SleepUntil(TimePoint t) = 0;
  void SleepFor(Duration d) { SleepUntil(Now() + d); }
};

class SystemClock : public Clock {
 public:
  TimePoint Now() const override;
  void SleepUntil(TimePoint t) override;
};

// Time moves only when someone sleeps: SleepUntil(t) sets now to max(now, t)
// and returns immediately.
class FakeClock : public Clock {
 public:
  explicit FakeClock(TimePoint start = TimePoint{0}) : now_(start) {}
  TimePoint Now() const override;
  void SleepUntil(TimePoint t) override;
  void Advance(Duration d);
  std::vector<TimePoint> Sleeps() const;

 private:
  mutable std::mutex mu_;
  TimePoint now_;
  std::vector<TimePoint> sleeps_;
};

}  // namespace medforge::gateway
