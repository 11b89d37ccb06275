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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace medforge {

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 Sha256Of(std::span<const std::uint8_t> bytes);
Sha256 Sha256Of(std::string_view bytes);

std::string ToHex(std::span<const std::uint8_t> bytes);
inline std::string Sha256Hex(std::string_view bytes) { return ToHex(Sha256Of(bytes)); }
inline std::string Sha256Hex(std::span<const std::uint8_t> bytes) { return ToHex(Sha256Of(bytes)); }

std::string Base64Encode(std::span<const std::uint8_t> bytes);

}  // namespace medforge
