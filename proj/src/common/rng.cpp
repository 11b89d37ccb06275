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

#include "medforge/common/rng.hpp"

#include <string>

#include "medforge/common/digest.hpp"

namespace medforge {

std::uint64_t DeriveSeed(std::uint64_t base, std::string_view label) {
  std::string buf = std::to_string(base);
  buf.push_back('\x1f');
  buf.append(label);
  auto d = Sha256Of(buf);
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = (out << 8) | d[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace medforge
